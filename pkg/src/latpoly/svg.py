"""Static SVG drawings of loops on the lattice."""

from __future__ import annotations

from typing import Sequence

from .lattice_core import Vec

__all__ = ["render_svg"]

SCALE = 40


def render_svg(vertices: Sequence[Vec], signs: Sequence[int] | None = None, origin: bool = False) -> str:
    """Draw a closed loop with arrowheads over the lattice points of its bounding box.

    Sides with sign +1 are solid and sides with sign -1 dashed.  The y axis
    points up.  With ``origin`` the point (0, 0) is included in the box and
    highlighted, which suits vector loops.
    """
    pts = list(vertices) + ([Vec(0, 0)] if origin else [])
    x0 = min(p[0] for p in pts) - 1
    x1 = max(p[0] for p in pts) + 1
    y0 = min(p[1] for p in pts) - 1
    y1 = max(p[1] for p in pts) + 1
    w, h = (x1 - x0) * SCALE, (y1 - y0) * SCALE

    def sx(x):
        return (x - x0) * SCALE

    def sy(y):
        return (y1 - y) * SCALE

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto">',
        '<path d="M0,0 L10,5 L0,10 z" fill="black"/>',
        "</marker>",
        "</defs>",
        '<g fill="#888">',
    ]
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="2"/>')
    out.append("</g>")
    if origin:
        out.append(f'<circle cx="{sx(0)}" cy="{sy(0)}" r="4" fill="red"/>')
    n = len(vertices)
    out.append('<g stroke="black" stroke-width="2" fill="none" marker-end="url(#arrow)">')
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        s = 1 if signs is None else signs[i]
        dash = "" if s > 0 else ' stroke-dasharray="6,4"'
        out.append(
            f'<polyline points="{sx(a[0])},{sy(a[1])} {sx(b[0])},{sy(b[1])}"{dash}/>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
