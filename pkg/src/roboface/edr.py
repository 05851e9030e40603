"""Emotion dynamic range: outlier trimming, convex hull, polygon area.

Trajectories are (N, 2) float arrays of valence/arousal coordinates in
[-1, 1]^2, one row per frame.  The headline number is the area of the
convex hull of the trajectory after the most distant points (measured
from the centroid of all points) have been dropped.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ValidationError

DEFAULT_TRIM_FRACTION = 0.05


def as_trajectory(points) -> np.ndarray:
    """Validate an (N, 2) VA trajectory: non-empty, finite, within bounds."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] == 0:
        raise ValidationError(f"expected non-empty (N, 2) trajectory, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("non-finite valence/arousal value")
    if np.any(np.abs(arr) > 1.0):
        raise ValidationError("valence/arousal outside [-1, 1]")
    return arr


@dataclass(frozen=True)
class HullPolygon:
    """Convex hull result: counter-clockwise vertices and shoelace area.

    Degenerate hulls (all points collinear, or fewer than 3 distinct
    points) carry the extreme points as vertices and area 0.
    """

    vertices: np.ndarray  # (H, 2)
    area: float

    def contains(self, point, tol: float = 1e-12) -> bool:
        """Orientation test against every edge; boundary counts as inside."""
        v = self.vertices
        h = v.shape[0]
        if h == 0:
            return False
        if h == 1:
            return bool(np.all(np.abs(point - v[0]) <= tol))
        px, py = float(point[0]), float(point[1])
        if h == 2:
            return _point_on_segment(px, py, v[0], v[1], tol)
        for i in range(h):
            ax, ay = v[i]
            bx, by = v[(i + 1) % h]
            if (bx - ax) * (py - ay) - (by - ay) * (px - ax) < -tol:
                return False
        return True


def _point_on_segment(px, py, a, b, tol):
    cross = (b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0])
    if abs(cross) > tol * max(1.0, abs(b[0] - a[0]) + abs(b[1] - a[1])):
        return False
    dot = (px - a[0]) * (b[0] - a[0]) + (py - a[1]) * (b[1] - a[1])
    return -tol <= dot <= (b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2 + tol


def trim_outliers(points, fraction: float = DEFAULT_TRIM_FRACTION) -> np.ndarray:
    """Drop the ceil(fraction * N) points farthest from the centroid.

    Distance ties resolve by dropping the higher frame index first; the
    survivors keep their original order.  fraction must be in [0, 1).
    With small N the count can cover every point (ceil never rounds to
    zero for positive fractions) and the result is then empty.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
        raise ValidationError("trim_outliers needs a non-empty (N, 2) array")
    if not 0.0 <= fraction < 1.0:
        raise ValidationError(f"trim fraction {fraction} outside [0, 1)")
    n = pts.shape[0]
    k = math.ceil(fraction * n)
    if k == 0:
        return pts.copy()
    centroid = pts.mean(axis=0)
    dist = np.hypot(pts[:, 0] - centroid[0], pts[:, 1] - centroid[1])
    ranked = sorted(range(n), key=lambda i: (dist[i], i), reverse=True)
    drop = set(ranked[:k])
    return pts[[i for i in range(n) if i not in drop]]


def convex_hull(points) -> HullPolygon:
    """Monotone-chain hull of the point set, vertices counter-clockwise."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
        raise ValidationError("convex_hull needs a non-empty (N, 2) array")
    idx = kernels.hull_indices(pts)
    vertices = pts[idx]
    return HullPolygon(vertices=vertices, area=polygon_area(vertices))


def polygon_area(vertices) -> float:
    """Absolute shoelace area; 0 for fewer than 3 vertices."""
    v = np.asarray(vertices, dtype=np.float64)
    if v.size == 0 or v.shape[0] < 3:
        return 0.0
    x, y = v[:, 0], v[:, 1]
    s = float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))
    return abs(s) / 2.0


def edr(points, fraction: float = DEFAULT_TRIM_FRACTION) -> float:
    """Convex-hull area of the trajectory after outlier trimming.

    Returns 0.0 when trimming leaves no points (tiny N with a positive
    fraction): an empty region has no spread to measure.
    """
    survivors = trim_outliers(points, fraction)
    if survivors.shape[0] == 0:
        return 0.0
    return convex_hull(survivors).area
