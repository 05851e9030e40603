"""CSV schemas: blendshape sequences, VA trajectories, paired datasets.

Columns are matched by header name, so files may permute them freely.
Floats are written with repr() precision and survive a parse round-trip
bit-exactly.
"""

import csv
import io
import logging

import numpy as np

from .baselines import PairedDataset
from .channels import ARKIT_CHANNELS, NUM_CHANNELS
from .errors import ParseError
from .frames import (
    BlendshapeFrame,
    HeadPose,
    check_monotonic_timestamps,
    validate_coefficients,
)

log = logging.getLogger(__name__)

POSE_COLUMNS = ("yaw", "pitch", "roll")


def _reader(text: str, what: str):
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r and any(cell.strip() for cell in r)]
    if not rows:
        raise ParseError(f"{what}: empty document, header row required")
    header = [c.strip() for c in rows[0]]
    return header, rows[1:]


def _cell_float(row, col_idx, col_name, row_num, what):
    try:
        return float(row[col_idx])
    except (ValueError, IndexError):
        value = row[col_idx] if col_idx < len(row) else "<missing>"
        raise ParseError(
            f"{what}: malformed float {value!r} at row {row_num}, column {col_name!r}"
        ) from None


def parse_blendshape_csv(text: str, lenient: bool = False, fps: float = 25.0):
    """Parse a blendshape sequence; 52 channel columns are required.

    Optional columns: ``frame`` (index), ``timestamp_ms``, and the
    ``yaw``/``pitch``/``roll`` head pose trio.  Without timestamps, frame
    indices (or row order) are converted at ``fps``.  In lenient mode
    out-of-range coefficients are clamped and counted instead of raising.
    """
    header, rows = _reader(text, "blendshape csv")
    col = {name: i for i, name in enumerate(header)}
    for name in ARKIT_CHANNELS:
        if name not in col:
            raise ParseError(f"blendshape csv: missing channel column {name!r}")
    pose_cols = [c for c in POSE_COLUMNS if c in col]
    if pose_cols and len(pose_cols) != 3:
        raise ParseError(
            f"blendshape csv: pose columns must come as a yaw/pitch/roll trio, got {pose_cols}"
        )

    frames = []
    total_clamped = 0
    for r, row in enumerate(rows, start=2):
        raw = [
            _cell_float(row, col[name], name, r, "blendshape csv")
            for name in ARKIT_CHANNELS
        ]
        try:
            coeffs, n_clamped = validate_coefficients(raw, lenient=lenient)
        except Exception as exc:
            raise ParseError(f"blendshape csv: row {r}: {exc}") from exc
        total_clamped += n_clamped

        if "timestamp_ms" in col:
            ts = _cell_float(row, col["timestamp_ms"], "timestamp_ms", r, "blendshape csv")
        elif "frame" in col:
            ts = _cell_float(row, col["frame"], "frame", r, "blendshape csv") * 1000.0 / fps
        else:
            ts = (r - 2) * 1000.0 / fps

        pose = None
        if pose_cols:
            cells = [row[col[c]].strip() if col[c] < len(row) else "" for c in POSE_COLUMNS]
            if any(cells):
                pose = HeadPose(
                    *(
                        _cell_float(row, col[c], c, r, "blendshape csv")
                        for c in POSE_COLUMNS
                    )
                )
        frames.append(BlendshapeFrame(coeffs, ts, pose))

    if not frames:
        raise ParseError("blendshape csv: no data rows")
    try:
        check_monotonic_timestamps(frames)
    except Exception as exc:
        raise ParseError(f"blendshape csv: {exc}") from exc
    if total_clamped:
        log.warning("clamped %d out-of-range blendshape coefficients", total_clamped)
    return frames


def blendshape_csv(frames) -> str:
    """Serialize frames in canonical column order."""
    with_pose = any(f.pose is not None for f in frames)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    header = ["frame", "timestamp_ms", *ARKIT_CHANNELS]
    if with_pose:
        header += list(POSE_COLUMNS)
    writer.writerow(header)
    for i, frame in enumerate(frames):
        row = [i, repr(float(frame.timestamp_ms))]
        row += [repr(float(v)) for v in frame.coefficients]
        if with_pose:
            if frame.pose is None:
                row += ["", "", ""]
            else:
                row += [repr(float(getattr(frame.pose, c))) for c in POSE_COLUMNS]
        writer.writerow(row)
    return out.getvalue()


def parse_va_csv(text: str) -> np.ndarray:
    """Parse a `frame,valence,arousal` trajectory into an (N, 2) array."""
    header, rows = _reader(text, "va csv")
    col = {name: i for i, name in enumerate(header)}
    for name in ("valence", "arousal"):
        if name not in col:
            raise ParseError(f"va csv: missing column {name!r}")
    points = []
    for r, row in enumerate(rows, start=2):
        v = _cell_float(row, col["valence"], "valence", r, "va csv")
        a = _cell_float(row, col["arousal"], "arousal", r, "va csv")
        if abs(v) > 1.0 or abs(a) > 1.0:
            raise ParseError(f"va csv: row {r}: value outside [-1, 1]")
        points.append((v, a))
    if not points:
        raise ParseError("va csv: no data rows")
    return np.asarray(points, dtype=np.float64)


def va_csv(points) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["frame", "valence", "arousal"])
    for i, (v, a) in enumerate(np.asarray(points, dtype=np.float64)):
        writer.writerow([i, repr(float(v)), repr(float(a))])
    return out.getvalue()


def _motor_columns(header, what):
    names = [c for c in header if c.startswith("motor_")]
    d = len(names)
    if d == 0:
        raise ParseError(f"{what}: no motor_* columns found")
    expected = [f"motor_{i:02d}" for i in range(d)]
    if sorted(names) != sorted(expected):
        raise ParseError(
            f"{what}: motor columns must be motor_00..motor_{d - 1:02d} with no gaps"
        )
    return expected


def parse_paired_csv(text: str) -> PairedDataset:
    """Parse paired samples: 52 channel columns plus motor_00..motor_dd."""
    header, rows = _reader(text, "paired csv")
    col = {name: i for i, name in enumerate(header)}
    for name in ARKIT_CHANNELS:
        if name not in col:
            raise ParseError(f"paired csv: missing channel column {name!r}")
    motor_names = _motor_columns(header, "paired csv")
    bs = np.empty((len(rows), NUM_CHANNELS))
    act = np.empty((len(rows), len(motor_names)))
    for r, row in enumerate(rows):
        for j, name in enumerate(ARKIT_CHANNELS):
            bs[r, j] = _cell_float(row, col[name], name, r + 2, "paired csv")
        for j, name in enumerate(motor_names):
            act[r, j] = _cell_float(row, col[name], name, r + 2, "paired csv")
    if not rows:
        raise ParseError("paired csv: no data rows")
    return PairedDataset(blendshapes=bs, actuators=act)


def paired_csv(dataset: PairedDataset) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    motor_names = [f"motor_{i:02d}" for i in range(dataset.dof)]
    writer.writerow(["frame", *ARKIT_CHANNELS, *motor_names])
    for i in range(len(dataset)):
        row = [i]
        row += [repr(float(v)) for v in dataset.blendshapes[i]]
        row += [repr(float(v)) for v in dataset.actuators[i]]
        writer.writerow(row)
    return out.getvalue()


def parse_motor_csv(text: str) -> np.ndarray:
    """Parse a `frame,motor_00..` actuator matrix."""
    header, rows = _reader(text, "motor csv")
    col = {name: i for i, name in enumerate(header)}
    motor_names = _motor_columns(header, "motor csv")
    mat = np.empty((len(rows), len(motor_names)))
    for r, row in enumerate(rows):
        for j, name in enumerate(motor_names):
            mat[r, j] = _cell_float(row, col[name], name, r + 2, "motor csv")
    if not rows:
        raise ParseError("motor csv: no data rows")
    return mat


def motor_csv(matrix) -> str:
    mat = np.asarray(matrix, dtype=np.float64)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["frame", *(f"motor_{i:02d}" for i in range(mat.shape[1]))])
    for i, row in enumerate(mat):
        writer.writerow([i, *(repr(float(v)) for v in row)])
    return out.getvalue()
