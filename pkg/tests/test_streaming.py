import io
import socket
import threading

import numpy as np
import pytest

from roboface.errors import ValidationError
from roboface.streaming import StreamReport, stream_sequence
from roboface.wire import decode_stream, motor_frames


def test_file_sink_skips_pacing(tmp_path):
    rng = np.random.default_rng(50)
    frames = motor_frames(rng.uniform(0, 1, (25, 8)))
    out = tmp_path / "frames.bin"
    report = stream_sequence(frames, 25.0, out)
    assert report.frames_sent == 25
    assert report.wall_time_s < 0.5  # no pacing on files
    assert report.jitter_s == []
    decoded = decode_stream(out.read_bytes())
    assert len(decoded) == 25
    assert [f.frame_index for f in decoded] == list(range(25))


def test_writable_object_sink():
    frames = motor_frames(np.full((3, 4), 0.5))
    buf = io.BytesIO()
    report = stream_sequence(frames, 25.0, buf)
    assert report.frames_sent == 3
    assert len(decode_stream(buf.getvalue())) == 3


def test_empty_sequence_empty_report(tmp_path):
    report = stream_sequence([], 25.0, tmp_path / "none.bin")
    assert report == StreamReport(frames_sent=0, wall_time_s=0.0)
    assert not (tmp_path / "none.bin").exists()


def test_invalid_fps_rejected(tmp_path):
    with pytest.raises(ValidationError):
        stream_sequence([], 0.0, tmp_path / "x.bin")


def test_bad_udp_spec_rejected():
    with pytest.raises(ValidationError):
        stream_sequence(motor_frames(np.zeros((1, 2))), 25.0, "udp://nohost")


def test_udp_sink_paces_and_delivers():
    recv = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
    recv.bind(("127.0.0.1", 0))
    recv.settimeout(2.0)
    port = recv.getsockname()[1]

    got = []

    def drain():
        while len(got) < 10:
            try:
                got.append(recv.recv(4096))
            except socket.timeout:
                return

    t = threading.Thread(target=drain)
    t.start()
    frames = motor_frames(np.full((10, 4), 0.25))
    report = stream_sequence(frames, 100.0, f"udp://127.0.0.1:{port}")
    t.join()
    recv.close()

    assert report.frames_sent == 10
    # 10 frames at 100 fps -> last frame scheduled at 90 ms
    assert 0.08 <= report.wall_time_s <= 0.3
    assert len(report.jitter_s) == 10
    assert len(got) == 10
    decoded = decode_stream(b"".join(got))
    assert [f.frame_index for f in decoded] == list(range(10))
    assert np.allclose(decoded[0].values, 0.25, atol=1.0 / 65535.0)


def test_jitter_stats():
    report = StreamReport(frames_sent=3, wall_time_s=0.1, jitter_s=[0.001, -0.002, 0.003])
    assert report.mean_abs_jitter_s == pytest.approx(0.002)
    assert report.max_abs_jitter_s == pytest.approx(0.003)
    assert StreamReport(0, 0.0).mean_abs_jitter_s == 0.0
