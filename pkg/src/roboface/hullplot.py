"""Standalone SVG rendering of valence/arousal hulls, one polygon per method.

Hand-rolled SVG keeps the output deterministic and dependency-free; the
file opens in any browser.  Valence runs rightward, arousal upward, with
[-1, 1]^2 filling the plot square.
"""

import numpy as np

from .edr import DEFAULT_TRIM_FRACTION, convex_hull, trim_outliers

MARGIN = 40.0
PLOT_SIZE = 480.0

PALETTE = (
    "#c0392b",
    "#2471a3",
    "#1e8449",
    "#b7950b",
    "#7d3c98",
    "#148f77",
    "#a04000",
    "#5d6d7e",
)


def viewport_xy(valence: float, arousal: float):
    """VA coordinates -> SVG pixel position; (-1,-1) is bottom-left."""
    x = MARGIN + (valence + 1.0) / 2.0 * PLOT_SIZE
    y = MARGIN + (1.0 - arousal) / 2.0 * PLOT_SIZE
    return x, y


def _slug(name: str) -> str:
    return "".join(c if c.isalnum() else "-" for c in name.lower()).strip("-")


def emit_hull_geometry(trajectories: dict, fraction: float = DEFAULT_TRIM_FRACTION) -> str:
    """Render named VA trajectories as filled hull polygons with scatter
    and per-method area labels; returns the SVG document text."""
    if not trajectories:
        raise ValueError("need at least one named trajectory")
    size = PLOT_SIZE + 2 * MARGIN
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:g}" height="{size:g}" '
        f'viewBox="0 0 {size:g} {size:g}">',
        f'<rect x="{MARGIN:g}" y="{MARGIN:g}" width="{PLOT_SIZE:g}" height="{PLOT_SIZE:g}" '
        'fill="#fdfdfd" stroke="#333333" stroke-width="1"/>',
    ]
    # zero axes
    x0, y0 = viewport_xy(0.0, 0.0)
    parts.append(
        f'<line x1="{x0:.2f}" y1="{MARGIN:g}" x2="{x0:.2f}" y2="{MARGIN + PLOT_SIZE:g}" '
        'stroke="#cccccc" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{MARGIN:g}" y1="{y0:.2f}" x2="{MARGIN + PLOT_SIZE:g}" y2="{y0:.2f}" '
        'stroke="#cccccc" stroke-width="1"/>'
    )
    parts.append(
        f'<text x="{MARGIN + PLOT_SIZE / 2:.2f}" y="{size - 8:.2f}" font-size="14" '
        'text-anchor="middle" font-family="sans-serif">valence</text>'
    )
    parts.append(
        f'<text x="14" y="{MARGIN + PLOT_SIZE / 2:.2f}" font-size="14" text-anchor="middle" '
        f'font-family="sans-serif" transform="rotate(-90 14 {MARGIN + PLOT_SIZE / 2:.2f})">'
        "arousal</text>"
    )

    label_y = MARGIN + 18.0
    for i, (name, points) in enumerate(trajectories.items()):
        color = PALETTE[i % len(PALETTE)]
        survivors = trim_outliers(np.asarray(points, dtype=np.float64), fraction)
        if survivors.shape[0] == 0:
            hull_pts = np.zeros((0, 2))
            area = 0.0
        else:
            hull = convex_hull(survivors)
            hull_pts, area = hull.vertices, hull.area
        coords = " ".join(
            "{:.3f},{:.3f}".format(*viewport_xy(vx, vy)) for vx, vy in hull_pts
        )
        parts.append(
            f'<polygon id="hull-{_slug(name)}" points="{coords}" fill="{color}" '
            f'fill-opacity="0.25" stroke="{color}" stroke-width="1.5"/>'
        )
        for vx, vy in survivors:
            px, py = viewport_xy(vx, vy)
            parts.append(
                f'<circle cx="{px:.3f}" cy="{py:.3f}" r="2" fill="{color}" fill-opacity="0.5"/>'
            )
        parts.append(
            f'<text x="{MARGIN + 8:.2f}" y="{label_y:.2f}" font-size="13" '
            f'font-family="sans-serif" fill="{color}">{name}: EDR={area:.4f}</text>'
        )
        label_y += 18.0

    parts.append("</svg>")
    return "\n".join(parts)
