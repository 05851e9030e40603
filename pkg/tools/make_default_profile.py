#!/usr/bin/env python3
"""Regenerate the bundled 32-DoF default profile.

Run from the repository root: python tools/make_default_profile.py
The poses below use dyadic fractions so the YAML round-trips exactly.
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

import yaml

from roboface.channels import ARKIT_CHANNELS
from roboface.profile import load_profile

DOF = 32

# Motor layout:
#  0 brow inner      1/2 brow L/R        3/4 upper lid L/R   5/6 lower lid L/R
#  7/8 eye yaw L/R   9/10 eye pitch L/R  11/12 cheek L/R     13/14 lip corner up L/R
# 15/16 lip corner down L/R   17 jaw     18 upper lip raise  19 lower lip down
# 20 pucker          21 funnel           22/23 mouth stretch L/R
# 24 mouth slide     25 nose wrinkle     26/27 brow outer L/R
# 28 lip press       29 neck yaw         30 neck pitch       31 neck roll
REST = [
    0.25, 0.5, 0.5, 0.25, 0.25, 0.5, 0.5, 0.5,
    0.5, 0.5, 0.5, 0.0, 0.0, 0.5, 0.5, 0.0,
    0.0, 0.125, 0.125, 0.0, 0.0, 0.0, 0.0, 0.0,
    0.5, 0.0, 0.5, 0.5, 0.0, 0.5, 0.5, 0.5,
]

MERGES = [
    ("gazeLeft", ["eyeLookOutLeft", "eyeLookInRight"]),
    ("gazeRight", ["eyeLookInLeft", "eyeLookOutRight"]),
    ("gazeUp", ["eyeLookUpLeft", "eyeLookUpRight"]),
    ("gazeDown", ["eyeLookDownLeft", "eyeLookDownRight"]),
    ("noseSneer", ["noseSneerLeft", "noseSneerRight"]),
]

EXCLUDED = [
    "cheekPuff",
    "cheekSquintLeft",
    "cheekSquintRight",
    "jawForward",
    "mouthClose",
    "mouthDimpleLeft",
    "mouthDimpleRight",
    "mouthPressLeft",
    "mouthPressRight",
    "mouthRollLower",
    "mouthRollUpper",
    "mouthShrugLower",
    "mouthShrugUpper",
    "tongueOut",
]

# semantic -> list of (intensity, {motor: absolute value})
MAPPINGS = {
    "gazeLeft": [(1.0, {7: 0.125, 8: 0.125})],
    "gazeRight": [(1.0, {7: 0.875, 8: 0.875})],
    "gazeUp": [(1.0, {9: 0.8125, 10: 0.8125})],
    "gazeDown": [(1.0, {9: 0.1875, 10: 0.1875})],
    "noseSneer": [(1.0, {25: 0.75, 18: 0.3125})],
    "eyeBlinkLeft": [(1.0, {3: 1.0, 5: 0.625})],
    "eyeBlinkRight": [(1.0, {4: 1.0, 6: 0.625})],
    "eyeSquintLeft": [(1.0, {5: 0.75})],
    "eyeSquintRight": [(1.0, {6: 0.75})],
    "eyeWideLeft": [(1.0, {3: 0.0, 26: 0.625})],
    "eyeWideRight": [(1.0, {4: 0.0, 27: 0.625})],
    "jawLeft": [(1.0, {24: 0.25})],
    "jawRight": [(1.0, {24: 0.75})],
    "jawOpen": [(0.5, {17: 0.5}), (1.0, {17: 0.875, 19: 0.25})],
    "mouthFunnel": [(1.0, {21: 0.75, 17: 0.25})],
    "mouthPucker": [(1.0, {20: 0.875})],
    "mouthLeft": [(1.0, {24: 0.3125})],
    "mouthRight": [(1.0, {24: 0.6875})],
    "mouthSmileLeft": [(0.5, {13: 0.6875}), (1.0, {13: 0.875, 11: 0.375})],
    "mouthSmileRight": [(0.5, {14: 0.6875}), (1.0, {14: 0.875, 12: 0.375})],
    "mouthFrownLeft": [(1.0, {15: 0.625})],
    "mouthFrownRight": [(1.0, {16: 0.625})],
    "mouthStretchLeft": [(1.0, {22: 0.75})],
    "mouthStretchRight": [(1.0, {23: 0.75})],
    "mouthLowerDownLeft": [(1.0, {19: 0.375})],
    "mouthLowerDownRight": [(1.0, {19: 0.375})],
    "mouthUpperUpLeft": [(1.0, {18: 0.5})],
    "mouthUpperUpRight": [(1.0, {18: 0.5})],
    "browDownLeft": [(1.0, {1: 0.125})],
    "browDownRight": [(1.0, {2: 0.125})],
    "browInnerUp": [(1.0, {0: 0.875})],
    "browOuterUpLeft": [(1.0, {26: 0.875})],
    "browOuterUpRight": [(1.0, {27: 0.875})],
}

HEADER = """\
# Default 32-actuator robot profile (29 facial motors + 3 neck motors).
# Anchor poses are absolute actuator positions; the rest pose is the
# implicit zero-intensity anchor of every mapping.
#
# Motor layout:
#   0 brow inner        1/2 brow L/R         3/4 upper lid L/R
#   5/6 lower lid L/R   7/8 eye yaw L/R      9/10 eye pitch L/R
#   11/12 cheek L/R     13/14 corner up L/R  15/16 corner down L/R
#   17 jaw              18 upper lip raise   19 lower lip down
#   20 pucker           21 funnel            22/23 stretch L/R
#   24 mouth slide      25 nose wrinkle      26/27 brow outer L/R
#   28 lip press        29 neck yaw          30 neck pitch
#   31 neck roll
#
# Generated by tools/make_default_profile.py; edit that script, not this file.
"""


def pose(overrides):
    p = list(REST)
    for motor, value in overrides.items():
        p[motor] = value
    return p


def build_document():
    merged = {name for _, inputs in MERGES for name in inputs}
    direct = [
        c for c in ARKIT_CHANNELS if c not in merged and c not in EXCLUDED
    ]
    missing = [c for c in direct if c not in MAPPINGS]
    if missing:
        raise SystemExit(f"unmapped direct channels: {missing}")

    return {
        "robot": {"dof": DOF, "rest_pose": REST, "fps": 25},
        "neck": {
            "yaw": {"motor": 29, "gain": 0.5, "rest": 0.5},
            "pitch": {"motor": 30, "gain": 0.5, "rest": 0.5},
            "roll": {"motor": 31, "gain": 0.25, "rest": 0.5},
        },
        "merges": [{"output": out, "inputs": inputs} for out, inputs in MERGES],
        "excluded": EXCLUDED,
        "mappings": {
            sem: {
                "anchors": [
                    {"intensity": tau, "pose": pose(ov)} for tau, ov in anchors
                ]
            }
            for sem, anchors in MAPPINGS.items()
        },
    }


def main():
    text = yaml.safe_dump(build_document(), sort_keys=False)
    profile = load_profile(text)
    assert profile.dof == DOF and len(profile.semantics()) == len(MAPPINGS)
    out = ROOT / "src" / "roboface" / "data" / "default_profile.yaml"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(HEADER + text)
    print(f"wrote {out} ({len(profile.maps)} mappings)")


if __name__ == "__main__":
    main()
