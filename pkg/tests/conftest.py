import numpy as np
import pytest
import yaml

from roboface.channels import ARKIT_CHANNELS
from roboface.cli import bundled_profile_text
from roboface.profile import PiecewiseMap, load_profile


@pytest.fixture(scope="session")
def default_profile():
    return load_profile(bundled_profile_text())


def small_profile_doc(dof=6):
    """Minimal valid profile: three mapped semantics, one merge, a neck,
    everything else excluded."""
    mapped = {"jawOpen", "mouthSmileLeft"}
    merged = {"noseSneerLeft", "noseSneerRight"}
    rest = [0.5, 0.5, 0.0, 0.5, 0.5, 0.5][:dof]
    return {
        "robot": {"dof": dof, "rest_pose": rest, "fps": 25},
        "neck": {
            "yaw": {"motor": 3, "gain": 0.5, "rest": 0.5},
            "pitch": {"motor": 4, "gain": 0.5, "rest": 0.5},
            "roll": {"motor": 5, "gain": 0.25, "rest": 0.5},
        },
        "merges": [{"output": "noseSneer", "inputs": sorted(merged)}],
        "excluded": [
            c for c in ARKIT_CHANNELS if c not in mapped and c not in merged
        ],
        "mappings": {
            "jawOpen": {
                "anchors": [
                    {"intensity": 0.5, "pose": [0.5, 0.5, 0.375, 0.5, 0.5, 0.5]},
                    {"intensity": 1.0, "pose": [0.5, 0.5, 0.875, 0.5, 0.5, 0.5]},
                ]
            },
            "mouthSmileLeft": {
                "anchors": [{"intensity": 1.0, "pose": [0.875, 0.5, 0.0, 0.5, 0.5, 0.5]}]
            },
            "noseSneer": {
                "anchors": [{"intensity": 1.0, "pose": [0.5, 0.75, 0.0, 0.5, 0.5, 0.5]}]
            },
        },
    }


@pytest.fixture
def small_profile():
    return load_profile(yaml.safe_dump(small_profile_doc()))


def random_piecewise_map(rng, d=4, semantic="jawOpen", max_anchors=5):
    """Valid random map: sorted distinct intensities in (0, 1], bounded
    offsets, full mask."""
    k = int(rng.integers(1, max_anchors + 1))
    taus = np.sort(rng.uniform(0.05, 1.0, size=k))
    while len(np.unique(taus)) != k or np.any(np.diff(taus) < 1e-3):
        taus = np.sort(rng.uniform(0.05, 1.0, size=k))
    deltas = np.vstack([np.zeros(d), rng.uniform(-0.5, 0.5, size=(k, d))])
    return PiecewiseMap(
        semantic=semantic,
        taus=np.concatenate([[0.0], taus]),
        deltas=deltas,
        mask=np.ones(d, dtype=bool),
    )
