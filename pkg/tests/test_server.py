import asyncio
import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from roboface.calibration import CalibrationSession, create_app
from roboface.errors import UnknownChannelError, ValidationError
from roboface.profile import load_profile
from roboface.retarget import eval_piecewise


@pytest.fixture
def session(small_profile):
    return CalibrationSession(small_profile)


@pytest.fixture
def client(session):
    return TestClient(create_app(session))


# ---------------------------------------------------------------------------
# session object
# ---------------------------------------------------------------------------


def test_set_actuator_clamps(session):
    assert session.set_actuator(2, 1.4) == 1.0
    assert session.live[2] == 1.0
    assert session.set_actuator(2, -0.5) == 0.0
    with pytest.raises(ValidationError):
        session.set_actuator(6, 0.5)
    with pytest.raises(ValidationError):
        session.set_actuator(0, float("nan"))


def test_anchor_replacement(session):
    session.select("jawOpen", 0.5)
    session.set_actuator(2, 0.25)
    session.save_anchor()
    session.set_actuator(2, 0.75)
    session.save_anchor()
    anchors = session.snapshot()["anchors"]["jawOpen"]
    at_half = [a for a in anchors if a["intensity"] == 0.5]
    assert len(at_half) == 1
    assert at_half[0]["pose"][2] == 0.75


def test_save_without_selection_rejected(session):
    with pytest.raises(ValidationError):
        session.save_anchor()


def test_intensity_zero_not_saveable(session):
    session.select("jawOpen", 0.0)  # selectable for preview
    with pytest.raises(ValidationError):
        session.save_anchor()


def test_select_validates(session):
    with pytest.raises(ValidationError):
        session.select("jawOpen", 1.5)
    with pytest.raises(UnknownChannelError):
        session.select("nonsense")
    with pytest.raises(ValidationError):
        session.select("noseSneerLeft")  # merge input, not a semantic


def test_selecting_excluded_channel_unexcludes(session):
    assert "browInnerUp" in session.excluded
    session.select("browInnerUp", 1.0)
    assert "browInnerUp" not in session.excluded
    with pytest.raises(ValidationError) as exc:
        session.export_profile()
    assert "browInnerUp" in str(exc.value)
    session.set_actuator(0, 0.875)
    session.save_anchor()
    profile = session.export_profile()
    assert "browInnerUp" in profile.maps
    assert "browInnerUp" not in profile.excluded


def test_export_round_trip(session):
    session.select("jawOpen", 0.75)
    session.set_actuator(2, 0.625)
    session.save_anchor()
    profile = load_profile(session.export_text())
    jaw = profile.maps["jawOpen"]
    assert list(jaw.anchor_intensities) == [0.5, 0.75, 1.0]
    # the new anchor evaluates back to exactly the authored offset
    assert eval_piecewise(jaw, 0.75)[2] == 0.625 - profile.rest_pose[2]


def test_draft_profile_usable_before_anchors(session):
    session.select("browInnerUp", 1.0)
    draft = session.draft_profile()
    out = session.preview(np.zeros(52))
    assert np.array_equal(out, draft.rest_pose)


def test_preview_reflects_saved_anchor(session, small_profile):
    coeffs = np.zeros(52)
    coeffs[17] = 1.0  # jawOpen
    out = session.preview(coeffs)
    assert out[2] == 0.875  # from the loaded profile's anchor


# ---------------------------------------------------------------------------
# HTTP API
# ---------------------------------------------------------------------------


def test_get_state(client):
    state = client.get("/api/state").json()
    assert state["dof"] == 6
    assert state["semantic"] is None
    assert len(state["actuators"]) == 6
    assert set(state["anchors"]) == {"jawOpen", "mouthSmileLeft", "noseSneer"}


def test_actuator_endpoint_clamps(client):
    r = client.post("/api/actuator", json={"index": 2, "value": 1.4})
    assert r.status_code == 200
    assert r.json()["actuators"][2] == 1.0


def test_actuator_index_bounds(client):
    r = client.post("/api/actuator", json={"index": 6, "value": 0.5})
    assert r.status_code == 400
    assert "index" in r.json()["detail"]


def test_select_endpoint(client):
    r = client.post("/api/select", json={"semantic": "jawOpen", "intensity": 0.5})
    assert r.status_code == 200
    assert r.json()["semantic"] == "jawOpen"
    assert r.json()["intensity"] == 0.5

    assert client.post("/api/select", json={"semantic": "mystery"}).status_code == 404
    bad = client.post("/api/select", json={"semantic": "jawOpen", "intensity": 2.0})
    assert bad.status_code == 400


def test_anchor_save_flow(client):
    client.post("/api/select", json={"semantic": "jawOpen", "intensity": 0.25})
    client.post("/api/actuator", json={"index": 2, "value": 0.25})
    r = client.post("/api/anchor")
    assert r.status_code == 200
    anchors = r.json()["anchors"]["jawOpen"]
    assert [a["intensity"] for a in anchors] == [0.25, 0.5, 1.0]

    r2 = client.post("/api/anchor")  # same intensity again: replacement
    assert len(r2.json()["anchors"]["jawOpen"]) == 3


def test_anchor_without_selection_rejected(client):
    assert client.post("/api/anchor").status_code == 400


def test_preview_endpoint(client):
    coeffs = [0.0] * 52
    coeffs[17] = 1.0
    r = client.post("/api/preview", json={"coefficients": coeffs})
    assert r.status_code == 200
    assert r.json()["actuators"][2] == 0.875

    shorthand = client.post(
        "/api/preview", json={"semantic": "jawOpen", "intensity": 1.0}
    )
    assert shorthand.json() == r.json()

    assert client.post("/api/preview", json={}).status_code == 400
    bad = client.post("/api/preview", json={"coefficients": [2.0] * 52})
    assert bad.status_code == 400


def test_preview_uses_selection_by_default(client):
    client.post("/api/select", json={"semantic": "jawOpen", "intensity": 0.5})
    r = client.post("/api/preview", json={})
    assert r.json()["actuators"][2] == 0.375


def test_preview_merge_semantic(client):
    r = client.post("/api/preview", json={"semantic": "noseSneer", "intensity": 1.0})
    assert r.status_code == 200
    assert r.json()["actuators"][1] == 0.75


def test_export_endpoint_round_trips(client):
    r = client.get("/api/profile/export")
    assert r.status_code == 200
    profile = load_profile(r.text)
    assert set(profile.maps) == {"jawOpen", "mouthSmileLeft", "noseSneer"}


def test_export_with_anchorless_semantic_is_400(client):
    client.post("/api/select", json={"semantic": "browInnerUp"})
    r = client.get("/api/profile/export")
    assert r.status_code == 400
    assert "browInnerUp" in r.json()["detail"]


def test_state_never_leaves_unit_range(client):
    for value in (-5.0, 0.3, 2.0, 1.0):
        client.post("/api/actuator", json={"index": 1, "value": value})
        state = client.get("/api/state").json()
        assert all(0.0 <= v <= 1.0 for v in state["actuators"])


# The event stream never ends, so it is driven as a raw ASGI call that can
# be read incrementally and cancelled; a blocking test client would wait
# forever for the response to complete.


def _scope(method, path, headers=()):
    return {
        "type": "http",
        "asgi": {"version": "3.0", "spec_version": "2.1"},
        "http_version": "1.1",
        "method": method,
        "scheme": "http",
        "path": path,
        "raw_path": path.encode(),
        "query_string": b"",
        "root_path": "",
        "headers": [(b"host", b"testserver"), *headers],
        "client": ("testclient", 50000),
        "server": ("testserver", 80),
    }


async def _post_json(app, path, payload):
    body = json.dumps(payload).encode()
    headers = (
        (b"content-type", b"application/json"),
        (b"content-length", str(len(body)).encode()),
    )
    messages = []
    delivered = False

    async def receive():
        nonlocal delivered
        if delivered:
            return {"type": "http.disconnect"}
        delivered = True
        return {"type": "http.request", "body": body, "more_body": False}

    async def send(message):
        messages.append(message)

    await app(_scope("POST", path, headers), receive, send)
    return next(m for m in messages if m["type"] == "http.response.start")["status"]


class EventStream:
    def __init__(self, app):
        self.app = app
        self.inbox = asyncio.Queue()
        self.buffer = b""
        self.task = None

    async def __aenter__(self):
        async def receive():
            await asyncio.Event().wait()

        self.task = asyncio.create_task(
            self.app(_scope("GET", "/api/events"), receive, self.inbox.put)
        )
        start = await asyncio.wait_for(self.inbox.get(), 5.0)
        assert start["type"] == "http.response.start"
        assert start["status"] == 200
        return self

    async def next_event(self):
        while b"\n\n" not in self.buffer:
            message = await asyncio.wait_for(self.inbox.get(), 5.0)
            self.buffer += message.get("body", b"")
        line, self.buffer = self.buffer.split(b"\n\n", 1)
        text = line.decode()
        assert text.startswith("data: ")
        return json.loads(text[len("data: "):])

    async def __aexit__(self, *exc):
        self.task.cancel()
        try:
            await self.task
        except asyncio.CancelledError:
            pass


def test_push_channel_delivers_snapshots(session):
    app = create_app(session)

    async def run():
        async with EventStream(app) as stream:
            snap = await stream.next_event()
            assert snap["dof"] == 6
            assert snap["semantic"] is None

    asyncio.run(run())


def test_mutation_broadcast_reaches_subscriber(session):
    app = create_app(session)

    async def run():
        async with EventStream(app) as stream:
            await stream.next_event()  # initial snapshot
            assert await _post_json(app, "/api/actuator", {"index": 0, "value": 0.8}) == 200
            snap = await stream.next_event()
            assert snap["actuators"][0] == 0.8

    asyncio.run(run())


def test_snapshot_versions_increase(client):
    v0 = client.get("/api/state").json()["version"]
    client.post("/api/actuator", json={"index": 0, "value": 0.9})
    v1 = client.get("/api/state").json()["version"]
    assert v1 > v0
