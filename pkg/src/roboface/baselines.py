"""Retrieval baselines over a paired (blendshape, actuator) dataset.

Two comparison strategies: uniform random sampling of stored actuator
frames, and per-frame nearest-neighbor retrieval on blendshape distance.
The random generator is numpy's default PCG64 so a given seed reproduces
the same sequence on any platform; golden tests pin this.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .channels import NUM_CHANNELS
from .errors import ValidationError
from .frames import BlendshapeFrame, frames_to_matrix


@dataclass(frozen=True)
class PairedDataset:
    """Immutable sample bank: blendshapes (N, 52) and actuators (N, d)."""

    blendshapes: np.ndarray
    actuators: np.ndarray

    def __post_init__(self):
        bs = np.ascontiguousarray(self.blendshapes, dtype=np.float64)
        act = np.ascontiguousarray(self.actuators, dtype=np.float64)
        if bs.ndim != 2 or bs.shape[1] != NUM_CHANNELS or bs.shape[0] == 0:
            raise ValidationError(f"blendshapes must be (N, {NUM_CHANNELS}), got {bs.shape}")
        if act.ndim != 2 or act.shape[0] != bs.shape[0]:
            raise ValidationError("actuators must pair 1:1 with blendshape rows")
        for name, arr in (("blendshapes", bs), ("actuators", act)):
            if not np.all(np.isfinite(arr)):
                raise ValidationError(f"non-finite value in {name}")
            if np.any(arr < 0.0) or np.any(arr > 1.0):
                raise ValidationError(f"{name} outside [0, 1]")
        bs.flags.writeable = False
        act.flags.writeable = False
        object.__setattr__(self, "blendshapes", bs)
        object.__setattr__(self, "actuators", act)

    def __len__(self):
        return self.blendshapes.shape[0]

    @property
    def dof(self) -> int:
        return self.actuators.shape[1]


def random_baseline(dataset: PairedDataset, n_frames: int, seed: int) -> np.ndarray:
    """T actuator frames drawn uniformly with replacement (seeded PCG64)."""
    if n_frames < 1:
        raise ValidationError("n_frames must be >= 1")
    rng = np.random.default_rng(seed)
    picks = rng.integers(0, len(dataset), size=n_frames)
    return dataset.actuators[picks].copy()


def nnr_baseline(
    dataset: PairedDataset, frames: Sequence[BlendshapeFrame]
) -> np.ndarray:
    """Actuators of the L2-nearest stored blendshape row per query frame.

    Exhaustive scan; distance ties go to the lowest sample index, so the
    output is a deterministic function of the dataset and query order.
    """
    if not frames:
        raise ValidationError("empty query sequence")
    queries = frames_to_matrix(frames)
    idx = kernels.nearest_indices(dataset.blendshapes, queries)
    return dataset.actuators[idx].copy()
