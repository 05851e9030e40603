"""Anchor-authoring session and its HTTP API.

The session owns a mutable draft: live actuator state, the selected
semantic/intensity, and per-semantic anchor poses seeded from the loaded
profile.  All mutation happens through async endpoints on one event loop,
so a single writer is guaranteed without locks; every mutation pushes a
full-state JSON snapshot to all subscribers (full state, not diffs, so a
reconnecting client recovers by applying the next snapshot).
"""

import asyncio
import json
import math
from typing import Optional

import numpy as np

from .channels import NUM_CHANNELS, channel_index, is_channel
from .errors import RobofaceError, UnknownChannelError, ValidationError
from .frames import BlendshapeFrame, validate_coefficients
from .profile import (
    MASK_EPSILON,
    PiecewiseMap,
    RetargetProfile,
    save_profile,
)
from .retarget import retarget_frame


class CalibrationSession:
    """Mutable anchor-editing state on top of an immutable base profile."""

    def __init__(self, profile: RetargetProfile):
        self.base = profile
        self.dof = profile.dof
        self.live = profile.rest_pose.copy()
        self.excluded = set(profile.excluded)
        self.selected_semantic: Optional[str] = None
        self.selected_intensity = 1.0
        self.version = 0
        # semantic -> {intensity: absolute pose}; masks remember explicit
        # channel masks so re-exporting cannot silently widen a map.
        self.anchors: dict = {}
        self.masks: dict = {}
        for sem, pmap in profile.maps.items():
            self.anchors[sem] = {
                float(tau): np.clip(profile.rest_pose + delta, 0.0, 1.0)
                for tau, delta in zip(pmap.anchor_intensities, pmap.anchor_deltas)
            }
            self.masks[sem] = pmap.mask.copy()
        self._merge_inputs = {n for r in profile.merges for n in r.inputs}
        self._merge_outputs = {r.output for r in profile.merges}

    # -- mutations ----------------------------------------------------------

    def set_actuator(self, index: int, value: float) -> float:
        """Clamp value into [0,1] and store it; returns the stored value."""
        if not 0 <= index < self.dof:
            raise ValidationError(f"actuator index {index} outside 0..{self.dof - 1}")
        if not math.isfinite(value):
            raise ValidationError(f"actuator value must be finite, got {value!r}")
        clamped = min(1.0, max(0.0, float(value)))
        self.live[index] = clamped
        self.version += 1
        return clamped

    def select(self, semantic: str, intensity: float = 1.0) -> None:
        if not math.isfinite(intensity) or not 0.0 <= intensity <= 1.0:
            raise ValidationError(f"intensity {intensity!r} outside [0, 1]")
        if semantic not in self.anchors:
            if semantic in self.excluded or semantic in self._merge_outputs:
                # Selecting an excluded channel pulls it back into the
                # mapped set; it must gain an anchor before export.
                self.excluded.discard(semantic)
                self.anchors[semantic] = {}
                self.masks[semantic] = None
            elif semantic in self._merge_inputs:
                raise ValidationError(
                    f"{semantic} feeds a merge rule; select the merge output instead"
                )
            else:
                raise UnknownChannelError(semantic)
        self.selected_semantic = semantic
        self.selected_intensity = float(intensity)
        self.version += 1

    def save_anchor(self) -> None:
        """Record the live pose at the selected intensity (replacing any
        anchor already saved at that intensity)."""
        if self.selected_semantic is None:
            raise ValidationError("no semantic selected")
        if self.selected_intensity == 0.0:
            raise ValidationError("intensity 0 is the implicit rest anchor")
        self.anchors[self.selected_semantic][self.selected_intensity] = self.live.copy()
        self.version += 1

    # -- projections --------------------------------------------------------

    def snapshot(self) -> dict:
        return {
            "version": self.version,
            "dof": self.dof,
            "actuators": [float(v) for v in self.live],
            "semantic": self.selected_semantic,
            "intensity": self.selected_intensity,
            "anchors": {
                sem: [
                    {"intensity": tau, "pose": [float(v) for v in poses[tau]]}
                    for tau in sorted(poses)
                ]
                for sem, poses in self.anchors.items()
            },
        }

    def _map_for(self, sem: str, poses: dict) -> PiecewiseMap:
        rest = self.base.rest_pose
        intensities = sorted(poses)
        taus = np.asarray([0.0] + intensities)
        deltas = np.vstack([np.zeros(self.dof)] + [poses[t] - rest for t in intensities])
        auto = np.any(np.abs(deltas) > MASK_EPSILON, axis=0)
        stored = self.masks.get(sem)
        mask = auto if stored is None else (stored | auto)
        deltas = np.where(mask[np.newaxis, :], deltas, 0.0)
        return PiecewiseMap(semantic=sem, taus=taus, deltas=deltas, mask=mask)

    def _build_profile(self, allow_empty: bool) -> RetargetProfile:
        maps = {}
        for sem, poses in self.anchors.items():
            if poses:
                maps[sem] = self._map_for(sem, poses)
            elif allow_empty:
                # placeholder that evaluates to no motion at any intensity
                maps[sem] = PiecewiseMap(
                    semantic=sem,
                    taus=np.asarray([0.0, 1.0]),
                    deltas=np.zeros((2, self.dof)),
                    mask=np.zeros(self.dof, dtype=bool),
                )
            else:
                raise ValidationError(
                    f"semantic {sem} is mapped but has no anchors; save one first"
                )
        return RetargetProfile(
            dof=self.dof,
            rest_pose=self.base.rest_pose,
            fps=self.base.fps,
            maps=maps,
            merges=self.base.merges,
            excluded=frozenset(self.excluded),
            neck=self.base.neck,
        )

    def draft_profile(self) -> RetargetProfile:
        return self._build_profile(allow_empty=True)

    def export_profile(self) -> RetargetProfile:
        return self._build_profile(allow_empty=False)

    def export_text(self) -> str:
        return save_profile(self.export_profile())

    def semantic_vector(self, semantic: str, intensity: float) -> np.ndarray:
        """Coefficient vector that drives one semantic at one intensity."""
        coeffs = np.zeros(NUM_CHANNELS)
        rule = next((r for r in self.base.merges if r.output == semantic), None)
        if rule is not None:
            for idx in rule.input_indices:
                coeffs[idx] = intensity
        elif is_channel(semantic):
            coeffs[channel_index(semantic)] = intensity
        else:
            raise UnknownChannelError(semantic)
        return coeffs

    def preview(self, coefficients) -> np.ndarray:
        """Actuators the draft profile would command for these coefficients."""
        coeffs, _ = validate_coefficients(coefficients)
        return retarget_frame(self.draft_profile(), BlendshapeFrame(coeffs, 0.0))


def create_app(session: CalibrationSession, static_dir=None):
    """FastAPI app over one session; optionally serves the UI bundle."""
    from fastapi import FastAPI, HTTPException
    from fastapi.responses import PlainTextResponse, StreamingResponse
    from pydantic import BaseModel

    class ActuatorUpdate(BaseModel):
        index: int
        value: float

    class Selection(BaseModel):
        semantic: str
        intensity: float = 1.0

    class PreviewRequest(BaseModel):
        coefficients: Optional[list] = None
        semantic: Optional[str] = None
        intensity: Optional[float] = None

    app = FastAPI(title="roboface calibration")
    queues: set = set()

    def guarded(fn):
        try:
            return fn()
        except UnknownChannelError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        except RobofaceError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    def broadcast() -> dict:
        snap = session.snapshot()
        for q in list(queues):
            q.put_nowait(snap)
        return snap

    @app.get("/api/state")
    async def get_state():
        return session.snapshot()

    @app.post("/api/actuator")
    async def set_actuator(body: ActuatorUpdate):
        guarded(lambda: session.set_actuator(body.index, body.value))
        return broadcast()

    @app.post("/api/select")
    async def select(body: Selection):
        guarded(lambda: session.select(body.semantic, body.intensity))
        return broadcast()

    @app.post("/api/anchor")
    async def save_anchor():
        guarded(session.save_anchor)
        return broadcast()

    @app.post("/api/preview")
    async def preview(body: PreviewRequest):
        def run():
            if body.coefficients is not None:
                coeffs = body.coefficients
            else:
                semantic = body.semantic or session.selected_semantic
                if semantic is None:
                    raise ValidationError("no coefficients given and nothing selected")
                intensity = (
                    body.intensity
                    if body.intensity is not None
                    else session.selected_intensity
                )
                coeffs = session.semantic_vector(semantic, intensity)
            return session.preview(coeffs)

        values = guarded(run)
        return {"actuators": [float(v) for v in values]}

    @app.get("/api/profile/export")
    async def export_profile():
        text = guarded(session.export_text)
        return PlainTextResponse(text, media_type="application/x-yaml")

    @app.get("/api/events")
    async def events():
        queue: asyncio.Queue = asyncio.Queue()
        queues.add(queue)

        async def gen():
            try:
                yield f"data: {json.dumps(session.snapshot())}\n\n"
                while True:
                    snap = await queue.get()
                    yield f"data: {json.dumps(snap)}\n\n"
            finally:
                queues.discard(queue)

        return StreamingResponse(gen(), media_type="text/event-stream")

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
