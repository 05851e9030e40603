"""Validated value types for per-frame facial data.

All types are immutable after construction (arrays are frozen read-only),
so frames and sequences can be shared across threads freely.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .channels import NUM_CHANNELS
from .errors import ValidationError


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=np.float64)
    out.flags.writeable = False
    return out


def validate_coefficients(values, lenient: bool = False):
    """Validate a 52-vector of blendshape coefficients.

    Returns ``(array, n_clamped)``.  In strict mode (default) any value
    outside [0, 1] raises; in lenient mode it is clamped and counted, since
    trackers occasionally overshoot the nominal range.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (NUM_CHANNELS,):
        raise ValidationError(
            f"expected {NUM_CHANNELS} coefficients, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValidationError("non-finite blendshape coefficient")
    out_of_range = (arr < 0.0) | (arr > 1.0)
    n_bad = int(np.count_nonzero(out_of_range))
    if n_bad:
        if not lenient:
            idx = int(np.argmax(out_of_range))
            raise ValidationError(
                f"coefficient {idx} = {arr[idx]} outside [0, 1] (strict mode)"
            )
        arr = np.clip(arr, 0.0, 1.0)
    return arr, n_bad


def validate_actuators(values, dof: int) -> np.ndarray:
    """Check an actuator vector against the active profile dimension."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (dof,):
        raise ValidationError(f"expected {dof} actuator values, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("non-finite actuator value")
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        idx = int(np.argmax((arr < 0.0) | (arr > 1.0)))
        raise ValidationError(f"actuator {idx} = {arr[idx]} outside [0, 1]")
    return _frozen(arr)


@dataclass(frozen=True)
class HeadPose:
    """Head orientation in radians."""

    yaw: float
    pitch: float
    roll: float

    def __post_init__(self):
        for axis in ("yaw", "pitch", "roll"):
            v = getattr(self, axis)
            if not math.isfinite(v):
                raise ValidationError(f"head pose {axis} is not finite")
            if abs(v) > math.pi:
                raise ValidationError(f"head pose {axis} = {v} exceeds pi")


@dataclass(frozen=True)
class BlendshapeFrame:
    """One tracked frame: 52 coefficients in canonical order plus timing.

    ``coefficients`` is a read-only float64 array; construction validates
    range and shape in strict mode.
    """

    coefficients: np.ndarray
    timestamp_ms: float
    pose: Optional[HeadPose] = None

    def __post_init__(self):
        arr, _ = validate_coefficients(self.coefficients, lenient=False)
        object.__setattr__(self, "coefficients", _frozen(arr))
        if not math.isfinite(self.timestamp_ms):
            raise ValidationError("non-finite frame timestamp")


def check_monotonic_timestamps(frames) -> None:
    for prev, cur in zip(frames, frames[1:]):
        if cur.timestamp_ms <= prev.timestamp_ms:
            raise ValidationError(
                f"timestamps must strictly increase, got {prev.timestamp_ms} "
                f"then {cur.timestamp_ms}"
            )


def frames_to_matrix(frames) -> np.ndarray:
    """Stack frame coefficients into a (T, 52) matrix."""
    if not frames:
        raise ValidationError("empty frame sequence")
    return np.stack([f.coefficients for f in frames])


@dataclass(frozen=True)
class VaPoint:
    """Single valence/arousal coordinate, both in [-1, 1]."""

    valence: float
    arousal: float

    def __post_init__(self):
        for axis in ("valence", "arousal"):
            v = getattr(self, axis)
            if not math.isfinite(v) or abs(v) > 1.0:
                raise ValidationError(f"{axis} = {v} outside [-1, 1]")
