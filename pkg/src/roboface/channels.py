"""Canonical ARKit blendshape channel ordering and unit-range helpers.

Every sequence of facial coefficients in this package is stored in the
fixed 52-channel order below.  Input files may list columns in any order;
loaders reorder by header name against this table.
"""

import numpy as np

from .errors import UnknownChannelError, ValidationError

# Fixed channel table, indices 0..51.  Do not reorder: profiles, datasets
# and golden fixtures all assume these positions.
ARKIT_CHANNELS = (
    "eyeBlinkLeft",
    "eyeLookDownLeft",
    "eyeLookInLeft",
    "eyeLookOutLeft",
    "eyeLookUpLeft",
    "eyeSquintLeft",
    "eyeWideLeft",
    "eyeBlinkRight",
    "eyeLookDownRight",
    "eyeLookInRight",
    "eyeLookOutRight",
    "eyeLookUpRight",
    "eyeSquintRight",
    "eyeWideRight",
    "jawForward",
    "jawLeft",
    "jawRight",
    "jawOpen",
    "mouthClose",
    "mouthFunnel",
    "mouthPucker",
    "mouthLeft",
    "mouthRight",
    "mouthSmileLeft",
    "mouthSmileRight",
    "mouthFrownLeft",
    "mouthFrownRight",
    "mouthDimpleLeft",
    "mouthDimpleRight",
    "mouthStretchLeft",
    "mouthStretchRight",
    "mouthRollLower",
    "mouthRollUpper",
    "mouthShrugLower",
    "mouthShrugUpper",
    "mouthPressLeft",
    "mouthPressRight",
    "mouthLowerDownLeft",
    "mouthLowerDownRight",
    "mouthUpperUpLeft",
    "mouthUpperUpRight",
    "browDownLeft",
    "browDownRight",
    "browInnerUp",
    "browOuterUpLeft",
    "browOuterUpRight",
    "cheekPuff",
    "cheekSquintLeft",
    "cheekSquintRight",
    "noseSneerLeft",
    "noseSneerRight",
    "tongueOut",
)

NUM_CHANNELS = len(ARKIT_CHANNELS)

_INDEX = {name: i for i, name in enumerate(ARKIT_CHANNELS)}


def channel_index(name: str) -> int:
    """Position of ``name`` in the canonical ordering (0..51)."""
    try:
        return _INDEX[name]
    except KeyError:
        raise UnknownChannelError(name) from None


def is_channel(name: str) -> bool:
    return name in _INDEX


def clamp_unit(values) -> np.ndarray:
    """Clamp every component to [0, 1].  Rejects non-finite input."""
    arr = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValidationError("non-finite value in vector to clamp")
    return np.clip(arr, 0.0, 1.0)
