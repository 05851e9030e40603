import csv
import io
import struct

import numpy as np
import pytest

from roboface import csvio
from roboface.baselines import PairedDataset
from roboface.channels import ARKIT_CHANNELS, channel_index
from roboface.errors import ParseError, ValidationError
from roboface.frames import BlendshapeFrame, HeadPose
from roboface.wire import (
    MotorFrame,
    decode_motor_frame,
    decode_stream,
    encode_motor_frame,
    encode_stream,
    motor_frames,
)

# ---------------------------------------------------------------------------
# blendshape CSV
# ---------------------------------------------------------------------------


def frame_rows(matrix):
    header = ["frame", *ARKIT_CHANNELS]
    rows = [[i, *(repr(float(v)) for v in row)] for i, row in enumerate(matrix)]
    out = io.StringIO()
    w = csv.writer(out)
    w.writerow(header)
    w.writerows(rows)
    return out.getvalue()


def test_single_neutral_row():
    frames = csvio.parse_blendshape_csv(frame_rows(np.zeros((1, 52))))
    assert len(frames) == 1
    assert np.array_equal(frames[0].coefficients, np.zeros(52))
    assert frames[0].timestamp_ms == 0.0
    assert frames[0].pose is None


def test_missing_channel_column_named():
    text = frame_rows(np.zeros((1, 52))).replace("jawOpen", "jawNope")
    with pytest.raises(ParseError) as exc:
        csvio.parse_blendshape_csv(text)
    assert "jawOpen" in str(exc.value)


def test_permuted_columns_equal_canonical():
    rng = np.random.default_rng(40)
    matrix = rng.uniform(0, 1, (5, 52)).round(6)
    canonical = csvio.parse_blendshape_csv(frame_rows(matrix))

    perm = rng.permutation(52)
    header = ["frame", *(ARKIT_CHANNELS[j] for j in perm)]
    out = io.StringIO()
    w = csv.writer(out)
    w.writerow(header)
    for i, row in enumerate(matrix):
        w.writerow([i, *(repr(float(row[j])) for j in perm)])
    permuted = csvio.parse_blendshape_csv(out.getvalue())

    for a, b in zip(canonical, permuted):
        assert np.array_equal(a.coefficients, b.coefficients)
        assert a.timestamp_ms == b.timestamp_ms


def test_malformed_float_names_row_and_column():
    text = frame_rows(np.zeros((2, 52))).replace("0.0", "zero", 1)
    with pytest.raises(ParseError) as exc:
        csvio.parse_blendshape_csv(text)
    msg = str(exc.value)
    assert "row 2" in msg and "eyeBlinkLeft" in msg


def test_non_monotonic_timestamps_rejected():
    frames = [BlendshapeFrame(np.zeros(52), 40.0), BlendshapeFrame(np.zeros(52), 80.0)]
    text = csvio.blendshape_csv(frames).replace("80.0", "40.0")
    with pytest.raises(ParseError) as exc:
        csvio.parse_blendshape_csv(text)
    assert "increase" in str(exc.value)


def test_strict_rejects_lenient_clamps():
    matrix = np.zeros((1, 52))
    matrix[0, 17] = 1.25
    text = frame_rows(matrix)
    with pytest.raises(ParseError):
        csvio.parse_blendshape_csv(text)
    frames = csvio.parse_blendshape_csv(text, lenient=True)
    assert frames[0].coefficients[17] == 1.0


def test_frame_column_converted_at_fps():
    frames = csvio.parse_blendshape_csv(frame_rows(np.zeros((3, 52))), fps=50.0)
    assert [f.timestamp_ms for f in frames] == [0.0, 20.0, 40.0]


def test_timestamp_column_wins_over_frame():
    base = csvio.blendshape_csv(
        [BlendshapeFrame(np.zeros(52), t) for t in (5.0, 47.5, 95.0)]
    )
    frames = csvio.parse_blendshape_csv(base)
    assert [f.timestamp_ms for f in frames] == [5.0, 47.5, 95.0]


def test_pose_trio_round_trip():
    pose = HeadPose(0.25, -0.5, 0.125)
    frames = [
        BlendshapeFrame(np.full(52, 0.5), 0.0, pose),
        BlendshapeFrame(np.full(52, 0.5), 40.0, None),
    ]
    text = csvio.blendshape_csv(frames)
    parsed = csvio.parse_blendshape_csv(text)
    assert parsed[0].pose == pose
    assert parsed[1].pose is None


def test_partial_pose_columns_rejected():
    text = frame_rows(np.zeros((1, 52)))
    text = text.replace("frame,", "frame,yaw,").replace("0,", "0,0.1,", 1)
    with pytest.raises(ParseError) as exc:
        csvio.parse_blendshape_csv(text)
    assert "trio" in str(exc.value)


def test_parse_serialize_parse_stable():
    rng = np.random.default_rng(41)
    frames = [
        BlendshapeFrame(rng.uniform(0, 1, 52), 40.0 * i, HeadPose(0.1, 0.2, -0.3))
        for i in range(6)
    ]
    text = csvio.blendshape_csv(frames)
    once = csvio.parse_blendshape_csv(text)
    twice = csvio.parse_blendshape_csv(csvio.blendshape_csv(once))
    for a, b in zip(once, twice):
        assert np.max(np.abs(a.coefficients - b.coefficients)) < 1e-6
        assert np.array_equal(a.coefficients, b.coefficients)  # repr round-trips
        assert a.timestamp_ms == b.timestamp_ms and a.pose == b.pose


def test_empty_document_rejected():
    with pytest.raises(ParseError):
        csvio.parse_blendshape_csv("")
    with pytest.raises(ParseError):
        csvio.parse_blendshape_csv(frame_rows(np.zeros((0, 52))))


# ---------------------------------------------------------------------------
# VA and paired/motor CSV
# ---------------------------------------------------------------------------


def test_va_round_trip():
    pts = np.array([[0.5, -0.25], [-1.0, 1.0], [0.0, 0.0]])
    again = csvio.parse_va_csv(csvio.va_csv(pts))
    assert np.array_equal(pts, again)


def test_va_requires_named_columns():
    with pytest.raises(ParseError) as exc:
        csvio.parse_va_csv("frame,valence\n0,0.5\n")
    assert "arousal" in str(exc.value)


def test_va_range_checked():
    with pytest.raises(ParseError):
        csvio.parse_va_csv("frame,valence,arousal\n0,1.5,0.0\n")


def test_paired_round_trip():
    rng = np.random.default_rng(42)
    ds = PairedDataset(rng.uniform(0, 1, (8, 52)), rng.uniform(0, 1, (8, 5)))
    again = csvio.parse_paired_csv(csvio.paired_csv(ds))
    assert np.array_equal(ds.blendshapes, again.blendshapes)
    assert np.array_equal(ds.actuators, again.actuators)
    assert again.dof == 5


def test_paired_motor_columns_must_be_contiguous():
    rng = np.random.default_rng(43)
    ds = PairedDataset(rng.uniform(0, 1, (2, 52)), rng.uniform(0, 1, (2, 3)))
    text = csvio.paired_csv(ds).replace("motor_02", "motor_07")
    with pytest.raises(ParseError) as exc:
        csvio.parse_paired_csv(text)
    assert "motor" in str(exc.value)


def test_motor_csv_round_trip():
    rng = np.random.default_rng(44)
    mat = rng.uniform(0, 1, (6, 32))
    again = csvio.parse_motor_csv(csvio.motor_csv(mat))
    assert np.array_equal(mat, again)


# ---------------------------------------------------------------------------
# wire protocol
# ---------------------------------------------------------------------------

# fmt: off
GOLDEN_HEX = {
    0.0: "53424f5401000000072000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000",
    0.5: "53424f540100000007207fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff7fff",
    1.0: "53424f54010000000720ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff",
}
# fmt: on


def test_encode_golden_frames():
    for value, hexes in GOLDEN_HEX.items():
        frame = MotorFrame(frame_index=7, values=np.full(32, value))
        blob = encode_motor_frame(frame)
        assert len(blob) == 74
        assert blob.hex() == hexes


def test_layout_fields():
    blob = encode_motor_frame(MotorFrame(frame_index=258, values=np.zeros(3)))
    assert blob[:4] == b"SBOT"
    assert blob[4] == 1
    assert struct.unpack(">I", blob[5:9])[0] == 258
    assert blob[9] == 3
    assert len(blob) == 10 + 6


def test_quantization_bound_round_trip():
    rng = np.random.default_rng(45)
    values = rng.uniform(0, 1, 32)
    frame = MotorFrame(frame_index=0, values=values)
    decoded, end = decode_motor_frame(encode_motor_frame(frame))
    assert end == 74
    assert np.max(np.abs(decoded.values - values)) <= 1.0 / 65535.0


def test_decoded_values_are_fixed_points():
    # decode then re-encode is the identity on the wire
    raw = np.arange(32, dtype=np.float64) / 65535.0
    frame = MotorFrame(frame_index=1, values=raw)
    blob = encode_motor_frame(frame)
    again = encode_motor_frame(decode_motor_frame(blob)[0])
    assert blob == again


def test_oversized_vector_rejected():
    with pytest.raises(ValidationError):
        encode_motor_frame(MotorFrame(frame_index=0, values=np.zeros(256)))


def test_frame_index_range_checked():
    with pytest.raises(ValidationError):
        MotorFrame(frame_index=-1, values=np.zeros(4))
    with pytest.raises(ValidationError):
        MotorFrame(frame_index=2**32, values=np.zeros(4))


def test_stream_round_trip():
    rng = np.random.default_rng(46)
    frames = motor_frames(rng.uniform(0, 1, (5, 8)))
    blob = encode_stream(frames)
    decoded = decode_stream(blob)
    assert [f.frame_index for f in decoded] == [0, 1, 2, 3, 4]
    for a, b in zip(frames, decoded):
        assert np.max(np.abs(a.values - b.values)) <= 1.0 / 65535.0


def test_stream_rejects_non_increasing_indices():
    a = encode_motor_frame(MotorFrame(frame_index=4, values=np.zeros(2)))
    b = encode_motor_frame(MotorFrame(frame_index=4, values=np.zeros(2)))
    with pytest.raises(ParseError):
        decode_stream(a + b)


def test_decode_corruption_detected():
    blob = encode_motor_frame(MotorFrame(frame_index=0, values=np.zeros(4)))
    with pytest.raises(ParseError):
        decode_motor_frame(b"XXXX" + blob[4:])
    with pytest.raises(ParseError):
        decode_motor_frame(blob[:-1])
    with pytest.raises(ParseError):
        decode_motor_frame(bytes([blob[0]]))
    wrong_version = blob[:4] + bytes([9]) + blob[5:]
    with pytest.raises(ParseError):
        decode_motor_frame(wrong_version)
