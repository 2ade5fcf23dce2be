"""SVG picture of a unit circle with optional certificates.

Model coordinates are drawn directly in a ``-1.6 -1.6 3.2 3.2`` viewBox; a
group transform flips y so that the picture has the usual orientation.
"""

from __future__ import annotations

import math

import numpy as np

from .norms import NormSpec, unit_circle_array
from .pivalue import circumscribe_normalize, inscribed_hexagon

CIRCLE_SAMPLES = 512
VIEWBOX = "-1.6 -1.6 3.2 3.2"

CIRCLE_STROKE = "#1f3a93"
HEXAGON_STROKE = "#c0392b"
SQUARE_STROKE = "#27ae60"
AXIS_STROKE = "#999999"


def _points(pts) -> str:
    return " ".join(f"{x:.9g},{y:.9g}" for x, y in pts)


def _polygon(pts, stroke: str, cls: str, dash: str = "") -> str:
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<polygon class="{cls}" points="{_points(pts)}" fill="none" '
            f'stroke="{stroke}" stroke-width="0.012"{extra}/>')


def render_svg(norm: NormSpec, certificates: bool = False) -> str:
    thetas = 2 * math.pi * np.arange(CIRCLE_SAMPLES) / CIRCLE_SAMPLES
    circle = unit_circle_array(norm, thetas).tolist()
    body = [
        '<line class="axis" x1="-1.5" y1="0" x2="1.5" y2="0" '
        f'stroke="{AXIS_STROKE}" stroke-width="0.006"/>',
        '<line class="axis" x1="0" y1="-1.5" x2="0" y2="1.5" '
        f'stroke="{AXIS_STROKE}" stroke-width="0.006"/>',
        f'<polyline class="unit-circle" points="{_points(circle + circle[:1])}" fill="none" '
        f'stroke="{CIRCLE_STROKE}" stroke-width="0.012"/>',
    ]
    if certificates:
        hexagon = inscribed_hexagon(norm, 1e-9)
        body.append(_polygon(hexagon.vertices, HEXAGON_STROKE, "hexagon"))
        # the square [-1, 1]^2 after normalization, pulled back to the body
        body.append(_polygon(circumscribe_normalize(norm, 1e-9).parallelogram(),
                             SQUARE_STROKE, "circumscribed", "0.04 0.02"))
    inner = "\n    ".join(body)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{VIEWBOX}" width="640" height="640">\n'
        '  <g transform="scale(1,-1)">\n'
        f"    {inner}\n"
        "  </g>\n"
        "</svg>\n"
    )
