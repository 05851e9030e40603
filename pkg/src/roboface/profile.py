"""Retarget profile model: piecewise anchor maps, merges, exclusions, neck.

A profile document (YAML or JSON) stores anchors as absolute actuator
poses the way an animator authored them on hardware; the loader converts
them to offsets from the rest pose and applies the channel mask so that
summing map contributions never double-counts motors across semantics.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import yaml

from .channels import ARKIT_CHANNELS, channel_index, is_channel
from .errors import ProfileError
from .frames import validate_actuators

NECK_AXES = ("yaw", "pitch", "roll")

# Anchor pose components closer to rest than this are treated as
# untouched when deriving the default channel mask.
MASK_EPSILON = 1e-4


def _frozen(arr):
    out = np.ascontiguousarray(arr, dtype=np.float64)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class PiecewiseMap:
    """Piecewise-linear map from one semantic intensity to actuator offsets.

    ``taus``/``deltas`` include the implicit rest node: ``taus[0] == 0``
    and ``deltas[0]`` is the zero vector, so evaluating at intensity 0
    always yields no motion.
    """

    semantic: str
    taus: np.ndarray  # (K+1,), strictly increasing, taus[0] == 0, taus[-1] <= 1
    deltas: np.ndarray  # (K+1, d)
    mask: np.ndarray  # (d,) bool

    def __post_init__(self):
        taus = _frozen(self.taus)
        deltas = _frozen(self.deltas)
        mask = np.ascontiguousarray(self.mask, dtype=bool)
        mask.flags.writeable = False
        if taus.ndim != 1 or deltas.ndim != 2 or taus.shape[0] != deltas.shape[0]:
            raise ProfileError(f"{self.semantic}: inconsistent anchor array shapes")
        if taus.shape[0] < 2:
            raise ProfileError(f"{self.semantic}: needs at least one explicit anchor")
        if taus[0] != 0.0 or np.any(deltas[0] != 0.0):
            raise ProfileError(f"{self.semantic}: missing zero rest node")
        if np.any(np.diff(taus) <= 0.0):
            raise ProfileError(f"{self.semantic}: anchor intensities must strictly increase")
        if taus[-1] > 1.0:
            raise ProfileError(f"{self.semantic}: anchor intensity above 1")
        if mask.shape != (deltas.shape[1],):
            raise ProfileError(f"{self.semantic}: mask length mismatch")
        if np.any(deltas[:, ~mask] != 0.0):
            raise ProfileError(f"{self.semantic}: nonzero offset outside channel mask")
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "mask", mask)

    @property
    def anchor_intensities(self):
        return self.taus[1:]

    @property
    def anchor_deltas(self):
        return self.deltas[1:]


@dataclass(frozen=True)
class MergeRule:
    output: str
    inputs: tuple

    @property
    def input_indices(self):
        return tuple(channel_index(n) for n in self.inputs)


@dataclass(frozen=True)
class NeckAxis:
    motor: int
    gain: float  # actuator units per radian
    rest: float


@dataclass(frozen=True)
class SmoothingConfig:
    """Gaussian kernel spec: sigma in frames, half-window radius."""

    sigma: float = 1.0
    radius: Optional[int] = None

    def __post_init__(self):
        if not math.isfinite(self.sigma) or self.sigma < 0.0:
            raise ProfileError(f"smoothing sigma must be >= 0, got {self.sigma}")
        if self.radius is not None and self.radius < 0:
            raise ProfileError("smoothing radius must be >= 0")

    def effective_radius(self) -> int:
        if self.radius is not None:
            return self.radius
        return int(math.ceil(3.0 * self.sigma))

    def kernel(self) -> np.ndarray:
        r = self.effective_radius()
        if self.sigma == 0.0 or r == 0:
            return np.ones(1)
        offsets = np.arange(-r, r + 1, dtype=np.float64)
        w = np.exp(-(offsets**2) / (2.0 * self.sigma**2))
        return w / w.sum()


@dataclass(frozen=True)
class RetargetProfile:
    """Immutable robot mapping profile; safe to share across threads."""

    dof: int
    rest_pose: np.ndarray
    fps: float
    maps: dict  # semantic -> PiecewiseMap, document order
    merges: tuple  # of MergeRule
    excluded: frozenset
    neck: Optional[dict] = None  # axis -> NeckAxis

    def __post_init__(self):
        object.__setattr__(self, "rest_pose", validate_actuators(self.rest_pose, self.dof))
        _validate_accounting(self)
        if self.neck is not None:
            motors = [self.neck[a].motor for a in NECK_AXES]
            if len(set(motors)) != 3:
                raise ProfileError("neck motor indices must be distinct")
            for a in NECK_AXES:
                na = self.neck[a]
                if not 0 <= na.motor < self.dof:
                    raise ProfileError(f"neck.{a}.motor {na.motor} outside 0..{self.dof - 1}")
                if not 0.0 <= na.rest <= 1.0:
                    raise ProfileError(f"neck.{a}.rest {na.rest} outside [0, 1]")

    def semantics(self):
        """All valid semantic names: merge outputs plus direct channels."""
        merged_inputs = {n for rule in self.merges for n in rule.inputs}
        names = [rule.output for rule in self.merges]
        names += [
            c
            for c in ARKIT_CHANNELS
            if c not in merged_inputs and c not in self.excluded
        ]
        return names


def _validate_accounting(profile: RetargetProfile) -> None:
    seen = {}

    def claim(channel, role):
        if channel in seen:
            raise ProfileError(
                f"channel {channel} accounted twice: {seen[channel]} and {role}"
            )
        seen[channel] = role

    for rule in profile.merges:
        if is_channel(rule.output):
            raise ProfileError(
                f"merge output {rule.output!r} shadows a canonical channel name"
            )
        if len(rule.inputs) < 1:
            raise ProfileError(f"merge {rule.output}: empty input list")
        for name in rule.inputs:
            if not is_channel(name):
                raise ProfileError(f"merge {rule.output}: unknown channel {name!r}")
            claim(name, f"merge input of {rule.output}")
    outputs = [r.output for r in profile.merges]
    if len(set(outputs)) != len(outputs):
        raise ProfileError("duplicate merge output name")

    for name in profile.excluded:
        if not is_channel(name):
            raise ProfileError(f"excluded: unknown channel {name!r}")
        claim(name, "excluded")

    merge_outputs = set(outputs)
    for sem, pmap in profile.maps.items():
        if pmap.semantic != sem:
            raise ProfileError(f"mapping key {sem} != map semantic {pmap.semantic}")
        if pmap.deltas.shape[1] != profile.dof:
            raise ProfileError(f"mappings.{sem}: offset dimension != dof")
        if sem in merge_outputs:
            continue
        if not is_channel(sem):
            raise ProfileError(
                f"mappings.{sem}: not a canonical channel or merge output"
            )
        claim(sem, "direct map input")

    for channel in ARKIT_CHANNELS:
        if channel not in seen:
            raise ProfileError(
                f"channel {channel} unaccounted for: map it, merge it, or exclude it"
            )


# ---------------------------------------------------------------------------
# Document loading / saving
# ---------------------------------------------------------------------------


def _need(doc, key, path):
    if not isinstance(doc, dict) or key not in doc:
        raise ProfileError("missing required key", path=f"{path}.{key}" if path else key)
    return doc[key]


def _as_float_list(value, length, path):
    if not isinstance(value, (list, tuple)) or len(value) != length:
        raise ProfileError(f"expected list of {length} numbers", path=path)
    out = []
    for i, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ProfileError(f"not a number: {v!r}", path=f"{path}[{i}]")
        out.append(float(v))
    return np.asarray(out, dtype=np.float64)


def _as_number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProfileError(f"not a number: {value!r}", path=path)
    return float(value)


def load_profile(text: str) -> RetargetProfile:
    """Parse and validate a profile document (YAML or JSON text)."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ProfileError(f"unparseable document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ProfileError("document root must be a mapping")

    robot = _need(doc, "robot", "")
    dof = _need(robot, "dof", "robot")
    if isinstance(dof, bool) or not isinstance(dof, int) or dof < 1:
        raise ProfileError("dof must be a positive integer", path="robot.dof")
    rest = _as_float_list(_need(robot, "rest_pose", "robot"), dof, "robot.rest_pose")
    fps = _as_number(robot.get("fps", 25), "robot.fps")
    if fps <= 0:
        raise ProfileError("fps must be positive", path="robot.fps")

    neck = None
    if doc.get("neck") is not None:
        neck = {}
        for axis in NECK_AXES:
            entry = _need(doc["neck"], axis, "neck")
            motor = _need(entry, "motor", f"neck.{axis}")
            if isinstance(motor, bool) or not isinstance(motor, int):
                raise ProfileError("motor must be an integer", path=f"neck.{axis}.motor")
            neck[axis] = NeckAxis(
                motor=motor,
                gain=_as_number(_need(entry, "gain", f"neck.{axis}"), f"neck.{axis}.gain"),
                rest=_as_number(_need(entry, "rest", f"neck.{axis}"), f"neck.{axis}.rest"),
            )

    merges = []
    for i, entry in enumerate(doc.get("merges") or []):
        path = f"merges[{i}]"
        output = _need(entry, "output", path)
        inputs = _need(entry, "inputs", path)
        if not isinstance(inputs, list) or not all(isinstance(n, str) for n in inputs):
            raise ProfileError("inputs must be a list of channel names", path=f"{path}.inputs")
        merges.append(MergeRule(output=str(output), inputs=tuple(inputs)))

    excluded = doc.get("excluded") or []
    if not isinstance(excluded, list):
        raise ProfileError("excluded must be a list", path="excluded")

    maps = {}
    for sem, spec in (doc.get("mappings") or {}).items():
        path = f"mappings.{sem}"
        anchors = _need(spec, "anchors", path)
        if not isinstance(anchors, list) or not anchors:
            raise ProfileError("anchors must be a non-empty list", path=f"{path}.anchors")
        taus = [0.0]
        poses = []
        for i, anchor in enumerate(anchors):
            apath = f"{path}.anchors[{i}]"
            tau = _as_number(_need(anchor, "intensity", apath), f"{apath}.intensity")
            if not 0.0 < tau <= 1.0:
                raise ProfileError(
                    f"intensity {tau} outside (0, 1]; 0 is the implicit rest anchor",
                    path=f"{apath}.intensity",
                )
            if tau <= taus[-1]:
                raise ProfileError(
                    f"{sem}: anchor intensities must strictly increase "
                    f"({tau} after {taus[-1]})",
                    path=f"{apath}.intensity",
                )
            pose = _as_float_list(_need(anchor, "pose", apath), dof, f"{apath}.pose")
            if np.any(pose < 0.0) or np.any(pose > 1.0):
                raise ProfileError("pose values must lie in [0, 1]", path=f"{apath}.pose")
            taus.append(tau)
            poses.append(pose)

        deltas = np.vstack([np.zeros(dof)] + [p - rest for p in poses])
        if spec.get("mask") is not None:
            mask = np.zeros(dof, dtype=bool)
            for j, idx in enumerate(spec["mask"]):
                if isinstance(idx, bool) or not isinstance(idx, int) or not 0 <= idx < dof:
                    raise ProfileError(
                        f"mask entry {idx!r} outside 0..{dof - 1}", path=f"{path}.mask[{j}]"
                    )
                mask[idx] = True
        else:
            mask = np.any(np.abs(deltas) > MASK_EPSILON, axis=0)
        deltas[:, ~mask] = 0.0
        maps[str(sem)] = PiecewiseMap(
            semantic=str(sem), taus=np.asarray(taus), deltas=deltas, mask=mask
        )

    return RetargetProfile(
        dof=dof,
        rest_pose=rest,
        fps=fps,
        maps=maps,
        merges=tuple(merges),
        excluded=frozenset(str(e) for e in excluded),
        neck=neck,
    )


def load_profile_file(path) -> RetargetProfile:
    with open(path, "r", encoding="utf-8") as fh:
        return load_profile(fh.read())


def profile_to_document(profile: RetargetProfile) -> dict:
    """Plain-data form of a profile, anchors as absolute actuator poses."""
    doc = {
        "robot": {
            "dof": profile.dof,
            "rest_pose": [float(v) for v in profile.rest_pose],
            "fps": profile.fps,
        }
    }
    if profile.neck is not None:
        doc["neck"] = {
            axis: {
                "motor": profile.neck[axis].motor,
                "gain": profile.neck[axis].gain,
                "rest": profile.neck[axis].rest,
            }
            for axis in NECK_AXES
        }
    if profile.merges:
        doc["merges"] = [
            {"output": r.output, "inputs": list(r.inputs)} for r in profile.merges
        ]
    if profile.excluded:
        doc["excluded"] = sorted(profile.excluded)
    if profile.maps:
        doc["mappings"] = {
            sem: {
                "anchors": [
                    {
                        "intensity": float(tau),
                        # clip guards the rare 1-ulp overshoot of rest + (pose - rest)
                        "pose": [
                            float(v)
                            for v in np.clip(profile.rest_pose + delta, 0.0, 1.0)
                        ],
                    }
                    for tau, delta in zip(pmap.anchor_intensities, pmap.anchor_deltas)
                ],
                "mask": [int(i) for i in np.nonzero(pmap.mask)[0]],
            }
            for sem, pmap in profile.maps.items()
        }
    return doc


def save_profile(profile: RetargetProfile) -> str:
    """Serialize to YAML; floats keep full precision and round-trip."""
    return yaml.safe_dump(profile_to_document(profile), sort_keys=False)
