"""Binary motor-frame protocol.

Frame layout, all fields big-endian:

    magic   4 bytes  ``SBOT``
    version 1 byte   0x01
    index   4 bytes  unsigned frame counter
    count   1 byte   actuator count d (<= 255)
    values  2*d      unsigned 16-bit, v16 = floor(value * 65535)

Stream files are plain concatenations of frames.  Quantization error is
bounded by 1/65535, far below servo resolution.
"""

import struct
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, ValidationError
from .frames import validate_actuators

MAGIC = b"SBOT"
VERSION = 1
_HEADER = struct.Struct(">4sBIB")


@dataclass(frozen=True)
class MotorFrame:
    frame_index: int
    values: np.ndarray

    def __post_init__(self):
        if not 0 <= self.frame_index < 2**32:
            raise ValidationError(f"frame index {self.frame_index} outside u32 range")
        object.__setattr__(
            self, "values", validate_actuators(self.values, len(self.values))
        )


def encode_motor_frame(frame: MotorFrame) -> bytes:
    d = frame.values.shape[0]
    if d > 255:
        raise ValidationError(f"cannot encode {d} actuators (max 255)")
    quantized = np.floor(frame.values * 65535.0).astype(np.uint16)
    header = _HEADER.pack(MAGIC, VERSION, frame.frame_index, d)
    return header + struct.pack(f">{d}H", *quantized.tolist())


def decode_motor_frame(data: bytes, offset: int = 0):
    """Decode one frame at ``offset``; returns (MotorFrame, next_offset)."""
    if len(data) - offset < _HEADER.size:
        raise ParseError("truncated motor frame header")
    magic, version, index, d = _HEADER.unpack_from(data, offset)
    if magic != MAGIC:
        raise ParseError(f"bad magic {magic!r}")
    if version != VERSION:
        raise ParseError(f"unsupported protocol version {version}")
    end = offset + _HEADER.size + 2 * d
    if len(data) < end:
        raise ParseError("truncated motor frame payload")
    raw = struct.unpack_from(f">{d}H", data, offset + _HEADER.size)
    values = np.asarray(raw, dtype=np.float64) / 65535.0
    return MotorFrame(frame_index=index, values=values), end


def encode_stream(frames) -> bytes:
    return b"".join(encode_motor_frame(f) for f in frames)


def decode_stream(data: bytes):
    """All frames in a concatenated stream, validating strict index order."""
    frames = []
    offset = 0
    while offset < len(data):
        frame, offset = decode_motor_frame(data, offset)
        if frames and frame.frame_index <= frames[-1].frame_index:
            raise ParseError(
                f"frame index {frame.frame_index} not increasing "
                f"after {frames[-1].frame_index}"
            )
        frames.append(frame)
    return frames


def motor_frames(matrix: np.ndarray, start_index: int = 0):
    """Wrap a (T, d) actuator matrix into MotorFrames with running indices."""
    return [
        MotorFrame(frame_index=start_index + i, values=row)
        for i, row in enumerate(np.asarray(matrix, dtype=np.float64))
    ]
