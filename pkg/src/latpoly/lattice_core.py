"""Exact integer and rational primitives on the plane lattice.

Everything here works on Python ints and :class:`fractions.Fraction`, so no
result is ever rounded.  Turning of vector sequences is measured in quarter
turns counted through half-open quadrants, which makes rotation numbers
integral by construction instead of by rounding a float angle.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .errors import ValidationError

__all__ = [
    "Vec",
    "RPoint",
    "vec",
    "det2",
    "dot2",
    "is_primitive",
    "primitive_part",
    "segment_lattice_count",
    "segment_lattice_points",
    "triangle_interior_count",
    "quadrant",
    "turn_quarters",
    "vector_rotation_number",
    "winding_number",
    "point_on_segment",
    "as_rpoints",
]


class Vec(NamedTuple):
    """A lattice vector (or lattice point) with integer coordinates."""

    x: int
    y: int

    def __add__(self, other):
        return Vec(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Vec(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return Vec(-self.x, -self.y)

    def __mul__(self, k):
        return Vec(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __repr__(self):
        return f"({self.x}, {self.y})"


class RPoint(NamedTuple):
    """A point with exact rational coordinates."""

    x: Fraction
    y: Fraction


def vec(p) -> Vec:
    """Coerce a pair of integers into a :class:`Vec`, rejecting non-integers."""
    if isinstance(p, Vec):
        return p
    x, y = p
    for c in (x, y):
        if isinstance(c, bool) or not isinstance(c, int):
            raise ValidationError(f"coordinate {c!r} is not an integer", rule="integer")
    return Vec(x, y)


def det2(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def dot2(u, v) -> int:
    return u[0] * v[0] + u[1] * v[1]


def is_primitive(v) -> bool:
    return gcd(v[0], v[1]) == 1


def primitive_part(v) -> Vec:
    """Return ``v / gcd(v)``; the zero vector has no primitive part."""
    g = gcd(v[0], v[1])
    if g == 0:
        raise ValidationError("zero vector has no direction", rule="zero-vector")
    return Vec(v[0] // g, v[1] // g)


def segment_lattice_count(p, q) -> int:
    """Number of lattice points on the closed segment ``pq`` minus one."""
    return gcd(q[0] - p[0], q[1] - p[1])


def segment_lattice_points(p, q) -> list[Vec]:
    """All lattice points of the closed segment ``pq`` ordered from p to q."""
    g = segment_lattice_count(p, q)
    if g == 0:
        return [vec(p)]
    step = Vec((q[0] - p[0]) // g, (q[1] - p[1]) // g)
    return [Vec(p[0] + k * step.x, p[1] + k * step.y) for k in range(g + 1)]


def triangle_interior_count(u, v) -> int:
    """Lattice points strictly inside the triangle ``0, u, v``.

    Uses Pick's formula on the (convex, hence simple) triangle.
    """
    d = abs(det2(u, v))
    if d == 0:
        raise ValidationError(f"vectors {u} and {v} span no triangle", rule="degenerate-triangle")
    boundary = gcd(u[0], u[1]) + gcd(v[0], v[1]) + gcd(u[0] - v[0], u[1] - v[1])
    return (d - boundary + 2) // 2


def quadrant(v) -> int:
    """Half-open quadrant index 0..3, quadrant k covering angles [k*pi/2, (k+1)*pi/2)."""
    x, y = v
    if x > 0 and y >= 0:
        return 0
    if x <= 0 and y > 0:
        return 1
    if x < 0 and y <= 0:
        return 2
    if x >= 0 and y < 0:
        return 3
    raise ValidationError("zero vector has no angle", rule="zero-vector")


def turn_quarters(u, v) -> int:
    """Signed number of quadrant boundaries crossed by the short turn u -> v.

    Summed over a closed cyclic sequence this gives four times the rotation
    number.  Antiparallel pairs are rejected because the short turn is not
    defined for them.
    """
    s = det2(u, v)
    if s == 0:
        if dot2(u, v) < 0:
            raise ValidationError(f"ambiguous half-turn between {u} and {v}", rule="antiparallel")
        return 0
    dq = (quadrant(v) - quadrant(u)) % 4
    if s > 0:
        return dq
    return dq - 4 if dq else 0


def vector_rotation_number(vs: Sequence) -> int:
    """Net number of counterclockwise turns of the cyclic vector sequence ``vs``."""
    n = len(vs)
    total = 0
    for i in range(n):
        try:
            total += turn_quarters(vs[i], vs[(i + 1) % n])
        except ValidationError as exc:
            raise ValidationError(str(exc), index=i, rule=exc.rule) from None
    q, rem = divmod(total, 4)
    assert rem == 0, "quarter-turn count of a closed sequence must be a multiple of 4"
    return q


def point_on_segment(p, a, b) -> bool:
    """Exact test whether ``p`` lies on the closed segment ``ab``."""
    ax, ay = a[0] - p[0], a[1] - p[1]
    bx, by = b[0] - p[0], b[1] - p[1]
    if ax * by - ay * bx != 0:
        return False
    return ax * bx + ay * by <= 0


def winding_number(loop: Sequence, p) -> int:
    """Winding number of the closed polygonal ``loop`` around ``p``.

    Coordinates may be ints or Fractions.  A horizontal ray towards +x is
    crossed with the half-open rule, an edge counting when ``p.y`` is in
    ``[min y, max y)`` of the edge.
    """
    n = len(loop)
    px, py = p
    w = 0
    for i in range(n):
        a = loop[i]
        b = loop[(i + 1) % n]
        if point_on_segment(p, a, b):
            raise ValidationError(f"point {tuple(p)} lies on the loop (edge {i})", index=i, rule="point-on-boundary")
        side = (b[0] - a[0]) * (py - a[1]) - (px - a[0]) * (b[1] - a[1])
        if a[1] <= py < b[1]:
            if side > 0:
                w += 1
        elif b[1] <= py < a[1]:
            if side < 0:
                w -= 1
    return w


def as_rpoints(points: Iterable) -> list[RPoint]:
    return [RPoint(Fraction(p[0]), Fraction(p[1])) for p in points]
