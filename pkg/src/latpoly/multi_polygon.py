"""Lattice multi-polygons: signed lattice loops and their Ehrhart data.

A multi-polygon is a cyclic list of lattice points with a sign on every
side.  Its triple ``(A, B/2, C)`` is made of a signed shoelace area, a
signed boundary lattice count and the rotation number of the side normals;
the lattice-point count ``sharp`` is obtained independently by summing
winding numbers of the loop pushed off the lattice along those normals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterator, Sequence

from .errors import ConsistencyError, ValidationError
from .lattice_core import (
    RPoint,
    Vec,
    det2,
    dot2,
    primitive_part,
    segment_lattice_count,
    vec,
    vector_rotation_number,
)
from .legal_loop import LegalLoop, reduce as reduce_loop
from .unimodular import UnimodularSequence

__all__ = [
    "MultiPolygon",
    "Triple",
    "VanishingPolygon",
    "make_multipolygon",
    "from_unimodular",
    "from_legal_loop",
    "from_polygon",
    "star_violation",
    "area_A",
    "boundary_B",
    "normals",
    "rotation_C",
    "push_scale",
    "pushed_loop",
    "lattice_windings",
    "count_sharp",
    "interior",
    "dilate",
    "translate",
    "ehrhart",
    "simplify",
    "join",
    "reverse",
    "is_left_turning",
    "is_all_plus",
]


def _collinear_kind(u: Vec, v: Vec, w: Vec) -> str | None:
    """Classify consecutive points u, v, w: None, 'between' or 'retrace'."""
    a, b = v - u, w - v
    if det2(a, b) != 0:
        return None
    return "between" if dot2(a, b) > 0 else "retrace"


def star_violation(vertices: Sequence[Vec], signs: Sequence[int]) -> tuple[int, str] | None:
    """First vertex index at which the collinear sign rule fails, if any.

    Three consecutive collinear points need equal signs on their two sides
    when the middle point lies between the others, and opposite signs when
    the path turns back on itself (a whisker).
    """
    d = len(vertices)
    for i in range(d):
        kind = _collinear_kind(vertices[i - 1], vertices[i], vertices[(i + 1) % d])
        if kind == "between" and signs[i - 1] != signs[i]:
            return i, "between"
        if kind == "retrace" and signs[i - 1] == signs[i]:
            return i, "retrace"
    return None


@dataclass(frozen=True)
class MultiPolygon:
    vertices: tuple[Vec, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(vec(v) for v in self.vertices)
        ss = tuple(self.signs)
        d = len(vs)
        if d < 2:
            raise ValidationError("a multi-polygon needs at least 2 vertices", rule="length")
        if len(ss) != d:
            raise ValidationError(f"{len(ss)} signs for {d} sides", rule="arity")
        for i, s in enumerate(ss):
            if isinstance(s, bool) or s not in (1, -1):
                raise ValidationError(f"sign {s!r} of side {i} is not +1 or -1", index=i, rule="sign")
        for i in range(d):
            if vs[i] == vs[(i + 1) % d]:
                raise ValidationError(f"side {i} has zero length", index=i, rule="zero-length")
        bad = star_violation(vs, ss)
        if bad is not None:
            i, kind = bad
            need = "equal" if kind == "between" else "opposite"
            raise ValidationError(
                f"collinear sign rule ({kind}) fails at vertex {i}: sides {(i - 1) % d} and {i} need {need} signs",
                index=i,
                rule=f"star-{kind}",
            )
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "signs", ss)

    def __len__(self):
        return len(self.vertices)

    def sides(self) -> Iterator[tuple[Vec, Vec, int]]:
        d = len(self.vertices)
        for i in range(d):
            yield self.vertices[i], self.vertices[(i + 1) % d], self.signs[i]


def make_multipolygon(vertices: Sequence, signs: Sequence[int]) -> MultiPolygon:
    return MultiPolygon(tuple(vertices), tuple(signs))


def from_polygon(vertices: Sequence) -> MultiPolygon:
    """All-plus multi-polygon on the given vertex cycle."""
    return MultiPolygon(tuple(vertices), (1,) * len(vertices))


def from_unimodular(s: UnimodularSequence) -> MultiPolygon:
    try:
        return MultiPolygon(s.vectors, s.eps)
    except ValidationError as exc:
        raise ConsistencyError(f"unimodular sequence violates the collinear sign rule: {exc}") from None


def from_legal_loop(loop: LegalLoop) -> MultiPolygon:
    """The reduced loop with each side signed by ``sign(det(v_i, v_{i+1}))``."""
    vs = reduce_loop(loop).vectors
    d = len(vs)
    signs = tuple(1 if det2(vs[i], vs[(i + 1) % d]) > 0 else -1 for i in range(d))
    try:
        return MultiPolygon(vs, signs)
    except ValidationError as exc:
        raise ConsistencyError(f"reduced legal loop is not a multi-polygon: {exc}") from None


@dataclass(frozen=True)
class Triple:
    """Coefficients of ``a m^2 + b m + c``; a, b half-integers with a + b integral."""

    a: Fraction
    b: Fraction
    c: int

    def __post_init__(self):
        a, b = Fraction(self.a), Fraction(self.b)
        if (2 * a).denominator != 1 or (2 * b).denominator != 1 or (a + b).denominator != 1:
            raise ValidationError(f"({a}, {b}, {self.c}) is not a realizable triple", rule="triple")
        if Fraction(self.c).denominator != 1:
            raise ValidationError(f"constant term {self.c} is not an integer", rule="triple")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", int(self.c))

    def __call__(self, m: int) -> int:
        v = self.a * m * m + self.b * m + self.c
        assert v.denominator == 1
        return int(v)

    def __add__(self, other: "Triple") -> "Triple":
        return Triple(self.a + other.a, self.b + other.b, self.c + other.c)

    def __neg__(self) -> "Triple":
        return Triple(-self.a, -self.b, -self.c)

    def __sub__(self, other: "Triple") -> "Triple":
        return self + (-other)

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def interior(self, m: int) -> int:
        """Value of the reciprocal polynomial ``a m^2 - b m + c``."""
        return self(-m)

    def polynomial(self) -> str:
        terms = []
        for coef, mono in ((self.a, "m^2"), (self.b, "m"), (Fraction(self.c), "")):
            if coef == 0:
                continue
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            body = fmt_rational(mag) if (mag != 1 or not mono) else ""
            terms.append((sign, body + mono))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            out += sign + t
        return out

    def __str__(self):
        return f"({fmt_rational(self.a)}, {fmt_rational(self.b)}, {self.c})"


def fmt_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class VanishingPolygon(ValidationError):
    """Simplification collapsed the loop; ``triple`` holds the input's triple."""

    def __init__(self, message, triple):
        super().__init__(message, rule="vanishing")
        self.triple = triple


def area_A(p: MultiPolygon) -> Fraction:
    return Fraction(sum(det2(u, v) for u, v, _ in p.sides()), 2)


def boundary_B(p: MultiPolygon) -> int:
    return sum(s * segment_lattice_count(u, v) for u, v, s in p.sides())


def normals(p: MultiPolygon) -> list[Vec]:
    """Primitive side normals: the clockwise quarter turn of each side direction, times its sign."""
    out = []
    for u, v, s in p.sides():
        e = primitive_part(v - u)
        out.append(Vec(s * e.y, -s * e.x))
    return out


def rotation_C(p: MultiPolygon) -> int:
    try:
        return vector_rotation_number(normals(p))
    except ValidationError as exc:
        raise ConsistencyError(f"antipodal consecutive normals: {exc}") from None


def push_scale(p: MultiPolygon) -> int:
    """Denominator D of the push distance 1/D.

    Any lattice point off the line of a side with primitive direction e is
    at distance >= 1/|e| from it; pushing by |e|/D with D = 2 max |e|^2
    sweeps no such point, so every push distance in (0, 1/D] gives the
    same windings.
    """
    return 2 * max(dot2(n, n) for n in normals(p))


def _scaled_pushed_loop(p: MultiPolygon) -> tuple[int, list[Vec]]:
    ns = normals(p)
    dscale = push_scale(p)
    pts: list[Vec] = []
    for i, v in enumerate(p.vertices):
        base = v * dscale
        for q in (base + ns[i - 1], base + ns[i]):
            if not pts or pts[-1] != q:
                pts.append(q)
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    return dscale, pts


def pushed_loop(p: MultiPolygon) -> list[RPoint]:
    """The loop with every side shifted by ``n_i / D``, joined straight at vertices."""
    dscale, pts = _scaled_pushed_loop(p)
    return [RPoint(Fraction(q.x, dscale), Fraction(q.y, dscale)) for q in pts]


def _row_crossings(p: MultiPolygon):
    """Yield ``(k, [(u_max, dir), ...])`` for each lattice row y = k.

    The pushed loop's winding number at lattice point (u, k) is the sum of
    ``dir`` over crossings with ``u <= u_max``.  Raises if a lattice point
    lies on the pushed loop.
    """
    dscale, pts = _scaled_pushed_loop(p)
    n = len(pts)
    for q in pts:
        if q.x % dscale == 0 and q.y % dscale == 0:
            raise ConsistencyError(f"pushed loop passes through lattice point {(q.x // dscale, q.y // dscale)}")
    ys = [v.y for v in p.vertices]
    for k in range(min(ys) - 1, max(ys) + 2):
        row = k * dscale
        crossings = []
        for i in range(n):
            a, b = pts[i], pts[(i + 1) % n]
            if a.y == b.y:
                if a.y == row:
                    lo, hi = sorted((a.x, b.x))
                    if -(-lo // dscale) * dscale <= hi:
                        raise ConsistencyError(f"horizontal pushed edge {i} contains a lattice point on row {k}")
                continue
            if a.y <= row < b.y:
                direction = 1
            elif b.y <= row < a.y:
                direction = -1
            else:
                continue
            xcross = Fraction(a.x) + Fraction((b.x - a.x) * (row - a.y), b.y - a.y)
            t = xcross / dscale
            if t.denominator == 1:
                raise ConsistencyError(f"pushed edge {i} passes through lattice point {(int(t), k)}")
            crossings.append((ceil(t) - 1, direction))
        yield k, crossings


def lattice_windings(p: MultiPolygon) -> dict[Vec, int]:
    """Nonzero winding numbers of the pushed loop at lattice points."""
    xs = [v.x for v in p.vertices]
    lo, hi = min(xs) - 1, max(xs) + 1
    out = {}
    for k, crossings in _row_crossings(p):
        for x in range(lo, hi + 1):
            w = sum(direction for u_max, direction in crossings if x <= u_max)
            if w:
                out[Vec(x, k)] = w
    return out


def count_sharp(p: MultiPolygon) -> int:
    """Sum over all lattice points of the pushed loop's winding number."""
    xs = [v.x for v in p.vertices]
    lo, hi = min(xs) - 1, max(xs) + 1
    total = 0
    for _, crossings in _row_crossings(p):
        for u_max, direction in crossings:
            width = min(u_max, hi) - lo + 1
            if width > 0:
                total += direction * width
    return total


def ehrhart(p: MultiPolygon) -> Triple:
    return Triple(area_A(p), Fraction(boundary_B(p), 2), rotation_C(p))


def interior(p: MultiPolygon) -> MultiPolygon:
    return MultiPolygon(p.vertices, tuple(-s for s in p.signs))


def dilate(p: MultiPolygon, m: int) -> MultiPolygon:
    if m < 1:
        raise ValidationError(f"dilation factor {m} must be a positive integer", rule="dilation")
    return MultiPolygon(tuple(v * m for v in p.vertices), p.signs)


def translate(p: MultiPolygon, t) -> MultiPolygon:
    return MultiPolygon(tuple(v + t for v in p.vertices), p.signs)


def reverse(p: MultiPolygon) -> MultiPolygon:
    """Reverse the vertex order (keeping the first vertex) and negate every sign."""
    vs = p.vertices
    return MultiPolygon((vs[0],) + vs[:0:-1], tuple(-s for s in reversed(p.signs)))


def join(p: MultiPolygon, q: MultiPolygon, i: int, j: int) -> MultiPolygon:
    """Splice ``q`` into ``p`` at the shared point ``p.vertices[i] == q.vertices[j]``."""
    if p.vertices[i] != q.vertices[j]:
        raise ValidationError(
            f"cannot join at {p.vertices[i]} and {q.vertices[j]}: points differ", index=i, rule="join-point"
        )
    n = len(q)
    qv = [q.vertices[(j + 1 + t) % n] for t in range(n)]
    qs = [q.signs[(j + t) % n] for t in range(n)]
    return MultiPolygon(p.vertices[: i + 1] + tuple(qv) + p.vertices[i + 1:], p.signs[:i] + tuple(qs) + p.signs[i:])


def is_left_turning(p: MultiPolygon) -> bool:
    vs = p.vertices
    d = len(vs)
    for i in range(d):
        u, v, w = vs[i - 1], vs[i], vs[(i + 1) % d]
        t = det2(v - u, w - u)
        if t < 0:
            return False
    return True


def is_all_plus(p: MultiPolygon) -> bool:
    return all(s == 1 for s in p.signs)


def simplify(p: MultiPolygon) -> MultiPolygon:
    """Remove middle points of collinear consecutive triples until none remain.

    The merged side takes the sign of the first side, except when the first
    point lies on the second side, where it takes the second side's sign.
    A whisker that folds back onto its base point is removed entirely.
    """
    vs = list(p.vertices)
    ss = list(p.signs)
    while True:
        d = len(vs)
        hit = None
        for i in range(d):
            if _collinear_kind(vs[i - 1], vs[i], vs[(i + 1) % d]) is not None:
                hit = i
                break
        if hit is None:
            break
        if d <= 2:
            raise VanishingPolygon(f"multi-polygon vanishes under simplification; triple {ehrhart(p)}", ehrhart(p))
        i = hit
        i0, i2 = (i - 1) % d, (i + 1) % d
        v1, v2, v3 = vs[i0], vs[i], vs[i2]
        s12, s23 = ss[i0], ss[i]
        if v1 == v3:
            # side v3 -> v4 becomes v1 -> v4; drop v2 and the repeat of v1
            drop = {i, i2}
            new_vs = [v for k, v in enumerate(vs) if k not in drop]
            new_ss = []
            for k in range(d):
                if k in drop:
                    continue
                new_ss.append(ss[i2] if k == i0 else ss[k])
            if len(new_vs) < 2:
                raise VanishingPolygon(
                    f"multi-polygon vanishes under simplification; triple {ehrhart(p)}", ehrhart(p)
                )
            vs, ss = new_vs, new_ss
            continue
        if _on_segment(v1, v2, v3):
            merged = s23
        else:
            merged = s12
        ss[i0] = merged
        del vs[i]
        del ss[i]
    try:
        return MultiPolygon(tuple(vs), tuple(ss))
    except ValidationError as exc:
        raise ConsistencyError(f"simplification produced an invalid multi-polygon: {exc}") from None


def _on_segment(x: Vec, a: Vec, b: Vec) -> bool:
    return det2(a - x, b - x) == 0 and dot2(a - x, b - x) <= 0
