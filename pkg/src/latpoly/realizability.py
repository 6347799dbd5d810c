"""Which triples ``(A, B/2, C)`` occur, and witnesses for the ones that do.

Every realizer re-analyzes its output and refuses to return a witness whose
computed triple differs from the request.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable

from .errors import ConsistencyError, ValidationError
from .lattice_core import Vec, det2
from .multi_polygon import (
    MultiPolygon,
    Triple,
    ehrhart,
    from_polygon,
    join,
    reverse,
    rotation_C,
    translate,
)
from .unimodular import make_unimodular

__all__ = [
    "FamilyTag",
    "Feasibility",
    "GeneratorSet",
    "GENERATOR_POINT",
    "generators",
    "in_A",
    "decompose",
    "realize_any",
    "realize_unimodular",
    "scott_feasible",
    "polygon_feasible",
    "realize_polygon",
    "convex_witness",
    "family_feasible",
    "is_convex",
    "enumerate_convex_polygons",
    "REFLEXIVE_AREAS",
]

GENERATOR_POINT = Vec(1, 1)

# Vertex cycles through (1, 1); each side is signed by det(v_i, v_{i+1}).
_GENERATOR_VERTICES = {
    "area": ((1, 1), (-1, 2), (1, 0)),
    "half": ((1, 1), (0, 1), (1, 0)),
    "turn": ((1, 1), (-1, -2), (0, -1), (-1, 1), (-2, 1), (1, 0)),
}
_GENERATOR_TRIPLES = {
    "area": Triple(1, 0, 0),
    "half": Triple(Fraction(1, 2), Fraction(1, 2), 0),
    "turn": Triple(0, 0, -1),
}

REFLEXIVE_AREAS = frozenset(Fraction(k, 2) for k in range(3, 10))


class FamilyTag(str, enum.Enum):
    ANY = "any_multipolygon"
    LATTICE_POLYGON = "lattice_polygon"
    CONVEX_POLYGON = "convex_polygon"
    UNIMODULAR = "unimodular"
    LEFT_TURNING_ALL_PLUS = "left_turning_all_plus"
    ALL_PLUS = "all_plus"


class Feasibility(str, enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNKNOWN = "unknown"


def _det_signed(vertices) -> MultiPolygon:
    vs = [Vec(*v) for v in vertices]
    d = len(vs)
    return MultiPolygon(tuple(vs), tuple(1 if det2(vs[i], vs[(i + 1) % d]) > 0 else -1 for i in range(d)))


@dataclass(frozen=True)
class GeneratorSet:
    """Multi-polygons through (1, 1) with triples (1,0,0), (1/2,1/2,0), (0,0,-1), plus their reverses.

    Triples and unimodularity are certified on construction.
    """

    area: MultiPolygon
    half: MultiPolygon
    turn: MultiPolygon
    area_rev: MultiPolygon
    half_rev: MultiPolygon
    turn_rev: MultiPolygon

    def __post_init__(self):
        for name, want in _GENERATOR_TRIPLES.items():
            for g, w in ((getattr(self, name), want), (getattr(self, name + "_rev"), -want)):
                got = ehrhart(g)
                if got != w or GENERATOR_POINT not in g.vertices:
                    raise ConsistencyError(f"generator {name} has triple {got}, expected {w}")
        for g in (self.half, self.turn, self.half_rev, self.turn_rev):
            if make_unimodular(g.vertices).eps != g.signs:
                raise ConsistencyError(f"generator {g.vertices} is not a unimodular multi-polygon")

    def pick(self, name: str, k: int) -> list[MultiPolygon]:
        """``|k|`` copies of a generator, reversed when ``k < 0``."""
        return [getattr(self, name if k > 0 else name + "_rev")] * abs(k)


@lru_cache(maxsize=None)
def generators() -> GeneratorSet:
    base = {name: _det_signed(verts) for name, verts in _GENERATOR_VERTICES.items()}
    return GeneratorSet(**base, **{name + "_rev": reverse(g) for name, g in base.items()})


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def in_A(a, b, c) -> bool:
    a, b, c = _as_fraction(a), _as_fraction(b), _as_fraction(c)
    return (2 * a).denominator == 1 and (2 * b).denominator == 1 and (a + b).denominator == 1 and c.denominator == 1


def decompose(a, b, c) -> tuple[int, int, int]:
    """Integers (k1, k2, k3) with (a, b, c) = k1 (1,0,0) + k2 (1/2,1/2,0) + k3 (0,0,-1)."""
    if not in_A(a, b, c):
        raise ValidationError(f"({a}, {b}, {c}) is not in the set of realizable triples", rule="not-in-A")
    a, b, c = _as_fraction(a), _as_fraction(b), _as_fraction(c)
    return int(a - b), int(2 * b), int(-c)


_SHIFTS = [Vec(dx, dy) for dx, dy in product((0, 1, -1, 2, -2), repeat=2) if (dx, dy) != (0, 0)]


def _attach(acc: MultiPolygon, g: MultiPolygon) -> MultiPolygon:
    """Join ``g`` onto ``acc`` so the validated result has the summed triple.

    Shared points at the generator point are tried first, then a small set
    of lattice translations of ``g`` sharing some other vertex with ``acc``.
    """
    want = ehrhart(acc) + ehrhart(g)
    for shift in [Vec(0, 0)] + _SHIFTS:
        h = translate(g, shift) if shift != (0, 0) else g
        for i, pv in enumerate(acc.vertices):
            if shift == (0, 0) and pv != GENERATOR_POINT:
                continue
            for j, qv in enumerate(h.vertices):
                if qv != pv:
                    continue
                try:
                    out = join(acc, h, i, j)
                except ValidationError:
                    continue
                if ehrhart(out) == want:
                    return out
    raise ConsistencyError("no additive join position found")


def _chain(parts: Iterable[MultiPolygon]) -> MultiPolygon:
    acc = None
    for g in parts:
        acc = g if acc is None else _attach(acc, g)
    assert acc is not None
    return acc


def _check(p: MultiPolygon, want: Triple) -> MultiPolygon:
    got = ehrhart(p)
    if got != want:
        raise ConsistencyError(f"witness has triple {got}, requested {want}")
    return p


def realize_any(a, b, c) -> MultiPolygon:
    """A lattice multi-polygon with triple (a, b, c), built by joining generators."""
    k1, k2, k3 = decompose(a, b, c)
    gens = generators()
    parts = gens.pick("area", k1) + gens.pick("half", k2) + gens.pick("turn", k3)
    if not parts:
        parts = [gens.turn, gens.turn_rev]
    return _check(_chain(parts), Triple(a, b, c))


def realize_unimodular(a, c) -> MultiPolygon:
    """A unimodular multi-polygon with triple (a, a, c), from the half and turn generators."""
    a = _as_fraction(a)
    if (2 * a).denominator != 1 or _as_fraction(c).denominator != 1:
        raise ValidationError(f"({a}, {a}, {c}) is not realizable: 2a and c must be integers", rule="not-in-A")
    k2, k3 = int(2 * a), -int(c)
    gens = generators()
    parts = gens.pick("half", k2) + gens.pick("turn", k3)
    if not parts:
        parts = [gens.turn, gens.turn_rev]
    p = _check(_chain(parts), Triple(a, a, c))
    if make_unimodular(p.vertices).eps != p.signs:
        raise ConsistencyError("unimodular realizer produced a non-unimodular multi-polygon")
    return p


def scott_feasible(a, b, c) -> bool:
    """Triples of convex lattice polygons."""
    a, b, c = _as_fraction(a), _as_fraction(b), _as_fraction(c)
    if not in_A(a, b, c) or c != 1:
        return False
    h = Fraction(3, 2)
    return (a + 1 == b >= h) or (a / 2 + 2 >= b >= h) or (a, b) == (Fraction(9, 2), Fraction(9, 2))


def polygon_feasible(a, b, c) -> bool:
    """Triples of simple (not necessarily convex) lattice polygons."""
    a, b, c = _as_fraction(a), _as_fraction(b), _as_fraction(c)
    return in_A(a, b, c) and c == 1 and a + 1 >= b >= Fraction(3, 2)


def _drop_collinear(vs: list[Vec]) -> list[Vec]:
    out = []
    for v in vs:
        if out and out[-1] == v:
            continue
        out.append(v)
    changed = True
    while changed and len(out) > 3:
        changed = False
        for i in range(len(out)):
            u, v, w = out[i - 1], out[i], out[(i + 1) % len(out)]
            if det2(v - u, w - v) == 0:
                del out[i]
                changed = True
                break
    return out


def convex_witness(interior: int, boundary: int) -> list[Vec]:
    """Vertices (counterclockwise) of a convex lattice polygon with the given point counts.

    Interior points sit on the row y = 1 except for the thin triangle used
    when the boundary has only three points.
    """
    i, B = interior, boundary
    if i < 0 or B < 3 or not (i == 0 or B <= 2 * i + 6 or (i, B) == (1, 9)):
        raise ValidationError(f"no convex lattice polygon has {i} interior and {B} boundary points", rule="convex-bounds")
    if (i, B) == (1, 9):
        vs = [(0, 0), (3, 0), (0, 3)]
    elif i == 0:
        vs = [(0, 0), (B - 2, 0), (0, 1)]
    elif B == 3:
        vs = [(0, 0), (1, 0), (2, 2 * i + 1)]
    elif B <= 2 * i + 4:
        vs = [(0, 0), (B - 4, 0), (i, 1), (0, 2), (-1, 1)]
    elif B == 2 * i + 5:
        vs = [(0, 0), (2 * i + 1, 0), (i + 1, 1), (0, 2)]
    else:
        vs = [(0, 0), (2 * i + 2, 0), (0, 2)]
    return _drop_collinear([Vec(*v) for v in vs])


def _staircase(interior: int, boundary: int) -> list[Vec]:
    # a (i+1) x 2 rectangle with a thin triangle of base t sticking out to the right
    t = boundary - 2 * interior - 6
    k = interior + 1
    return [Vec(0, 0), Vec(k + t, 0), Vec(k, 1), Vec(k, 2), Vec(0, 2)]


def realize_polygon(a, b) -> MultiPolygon:
    """An all-plus simple lattice polygon with triple (a, b, 1).

    Convex when the convex characterization allows it, otherwise an
    L-shaped staircase.
    """
    a, b = _as_fraction(a), _as_fraction(b)
    if not polygon_feasible(a, b, 1):
        raise ValidationError(f"({a}, {b}, 1) is not the triple of any lattice polygon", rule="infeasible")
    boundary = int(2 * b)
    interior = int(a - b + 1)
    if scott_feasible(a, b, 1):
        p = from_polygon(convex_witness(interior, boundary))
        if not is_convex(p):
            raise ConsistencyError("convex witness is not convex")
    else:
        p = from_polygon(_staircase(interior, boundary))
    return _check(p, Triple(a, b, 1))


def is_convex(p: MultiPolygon) -> bool:
    """Strictly convex and counterclockwise (collinear vertices allowed)."""
    vs = p.vertices
    d = len(vs)
    if d < 3:
        return False
    for i in range(d):
        if det2(vs[i] - vs[i - 1], vs[(i + 1) % d] - vs[i]) < 0:
            return False
    # a locally convex CCW loop is a convex polygon iff it turns once
    return rotation_C(p) == 1


def family_feasible(a, b, c, family: FamilyTag | str) -> Feasibility:
    """Tri-state membership of (a, b, c) in the triple set of a subfamily.

    ``unknown`` marks the extreme cases where only a necessary bound and a
    separate sufficient condition are available.
    """
    family = FamilyTag(family)
    F, I, U = Feasibility.FEASIBLE, Feasibility.INFEASIBLE, Feasibility.UNKNOWN
    if not in_A(a, b, c):
        return I
    a, b, c = _as_fraction(a), _as_fraction(b), int(_as_fraction(c))
    if family is FamilyTag.ANY:
        return F
    if family is FamilyTag.LATTICE_POLYGON:
        return F if polygon_feasible(a, b, c) else I
    if family is FamilyTag.CONVEX_POLYGON:
        return F if scott_feasible(a, b, c) else I
    if family is FamilyTag.UNIMODULAR:
        return F if a == b else I
    h = Fraction(1, 2)
    if family is FamilyTag.ALL_PLUS:
        lo, mid = Fraction(3, 2), Fraction(5, 2)
        if c == 0:
            return F if b >= 2 else I
        if c == 1:
            return F if b >= mid or (lo <= b <= 2 and a - b + 1 >= 0) else I
        if c == -1:
            return F if b >= mid or (lo <= b <= 2 and a + b - 1 <= 0) else I
        if b >= abs(c) + 1:
            return F
        if b <= abs(c):
            return I
        return U
    # left-turning all-plus
    if (c == 1 and scott_feasible(a, b, c)) or (c >= 2 and b >= c + 1):
        return F
    if c < 1 or b < c + h:
        return I
    return U


def _hull(points: list[Vec]) -> list[Vec]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and det2(out[-1] - out[-2], p - out[-1]) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(pts[::-1])
    return lower[:-1] + upper[:-1]


def enumerate_convex_polygons(max_coord: int) -> list[MultiPolygon]:
    """All convex lattice polygons with vertices in [0, max_coord]^2, up to translation.

    Vertex sets in strictly convex position are grown point by point; the
    property is inherited by subsets, so the search prunes exactly.
    """
    if max_coord > 4:
        raise ValidationError("enumeration is limited to max_coord <= 4", rule="too-large")
    grid = [Vec(x, y) for x in range(max_coord + 1) for y in range(max_coord + 1)]
    seen: set[tuple[Vec, ...]] = set()
    out = []

    def grow(chosen: list[Vec], start: int):
        if len(chosen) >= 3:
            hull = _hull(chosen)
            if len(hull) != len(chosen):
                return
            mx = min(v.x for v in hull)
            my = min(v.y for v in hull)
            key = tuple(sorted(v - (mx, my) for v in hull))
            if key not in seen:
                seen.add(key)
                out.append(from_polygon(hull))
        for k in range(start, len(grid)):
            chosen.append(grid[k])
            grow(chosen, k + 1)
            chosen.pop()

    grow([], 0)
    return out
