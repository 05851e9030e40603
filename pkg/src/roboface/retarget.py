"""Blendshape-to-actuator retargeting.

Pipeline: smooth the coefficient sequence, average merged channel pairs
into their shared semantic, evaluate each semantic's piecewise anchor map,
sum the offsets onto the rest pose, clamp once, then overwrite the neck
motors from the head pose when one is present.
"""

from typing import Optional, Sequence

import numpy as np

from . import kernels
from .channels import channel_index, clamp_unit
from .errors import ValidationError
from .frames import BlendshapeFrame, HeadPose, frames_to_matrix
from .profile import NECK_AXES, PiecewiseMap, RetargetProfile, SmoothingConfig


def eval_piecewise(pmap: PiecewiseMap, beta: float) -> np.ndarray:
    """Actuator offset vector contributed by one semantic at intensity beta."""
    return eval_piecewise_many(pmap, np.asarray([beta]))[0]


def eval_piecewise_many(pmap: PiecewiseMap, betas) -> np.ndarray:
    betas = np.asarray(betas, dtype=np.float64)
    if np.any(~np.isfinite(betas)) or np.any(betas < 0.0) or np.any(betas > 1.0):
        raise ValidationError("piecewise map input outside [0, 1]")
    return kernels.eval_piecewise_batch(pmap.taus, pmap.deltas, betas)


def merge_channels(frame: BlendshapeFrame, profile: RetargetProfile) -> dict:
    """Semantic intensities for one frame: merge rules averaged, direct
    channels passed through, excluded channels dropped."""
    names, mat = _semantic_matrix(frame.coefficients[np.newaxis, :], profile)
    return dict(zip(names, mat[0]))


def _semantic_matrix(coeffs: np.ndarray, profile: RetargetProfile):
    """(T, 52) coefficients -> (T, S) semantic intensities, in
    profile.semantics() order (merge outputs first, then direct channels)."""
    names = profile.semantics()
    cols = []
    for rule in profile.merges:
        idx = list(rule.input_indices)
        cols.append(coeffs[:, idx].sum(axis=1) / float(len(idx)))
    for name in names[len(profile.merges) :]:
        cols.append(coeffs[:, channel_index(name)])
    if not cols:
        return names, np.zeros((coeffs.shape[0], 0))
    return names, np.column_stack(cols)


def retarget_frame(profile: RetargetProfile, frame: BlendshapeFrame) -> np.ndarray:
    """Rest pose plus the summed per-semantic map offsets, clamped to
    [0, 1]; neck motors follow the head pose when one is present."""
    poses = [frame.pose] if frame.pose is not None else [None]
    return _retarget_matrix(profile, frame.coefficients[np.newaxis, :], poses)[0]


def _retarget_matrix(profile, coeffs, poses) -> np.ndarray:
    t = coeffs.shape[0]
    names, betas = _semantic_matrix(coeffs, profile)
    column = {name: i for i, name in enumerate(names)}
    acc = np.zeros((t, profile.dof))
    for sem, pmap in profile.maps.items():
        acc += eval_piecewise_many(pmap, betas[:, column[sem]])
    out = clamp_unit(profile.rest_pose[np.newaxis, :] + acc)
    if profile.neck is not None:
        for i, pose in enumerate(poses):
            if pose is None:
                continue
            for motor, value in map_head_pose(profile, pose):
                out[i, motor] = value
    return out


def map_head_pose(profile: RetargetProfile, pose: HeadPose):
    """Affine per-axis neck command: clamp(rest + gain * angle)."""
    if profile.neck is None:
        raise ValidationError("profile has no neck mapping")
    pairs = []
    for axis in NECK_AXES:
        na = profile.neck[axis]
        value = na.rest + na.gain * getattr(pose, axis)
        pairs.append((na.motor, min(1.0, max(0.0, value))))
    return pairs


def smooth_sequence(
    frames: Sequence[BlendshapeFrame], cfg: Optional[SmoothingConfig] = None
):
    """Gaussian-smooth coefficients along time, reflect-padded; timestamps
    and poses are untouched and sigma=0 is the identity."""
    if not frames:
        raise ValidationError("empty frame sequence")
    cfg = cfg or SmoothingConfig()
    if cfg.sigma == 0.0 or len(frames) == 1:
        return list(frames)
    mat = frames_to_matrix(frames)
    smoothed = np.clip(kernels.smooth_columns(mat, cfg.kernel()), 0.0, 1.0)
    return [
        BlendshapeFrame(smoothed[i], f.timestamp_ms, f.pose)
        for i, f in enumerate(frames)
    ]


def retarget_sequence(
    profile: RetargetProfile,
    frames: Sequence[BlendshapeFrame],
    cfg: Optional[SmoothingConfig] = None,
) -> np.ndarray:
    """Smooth then retarget every frame; returns a (T, dof) matrix equal to
    frame-wise retarget_frame over the smoothed sequence."""
    smoothed = smooth_sequence(frames, cfg)
    coeffs = frames_to_matrix(smoothed)
    return _retarget_matrix(profile, coeffs, [f.pose for f in smoothed])
