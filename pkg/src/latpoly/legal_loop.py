"""Legal loops, their duals and the generalized twelve-point identity."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import ConsistencyError, ValidationError
from .lattice_core import (
    Vec,
    det2,
    dot2,
    is_primitive,
    segment_lattice_count,
    segment_lattice_points,
    triangle_interior_count,
    vec,
    vector_rotation_number,
)
from .unimodular import UnimodularSequence, random_unimodular

__all__ = [
    "LegalLoop",
    "validate_legal",
    "reduce",
    "refine",
    "dual",
    "signed_boundary",
    "winding",
    "TwelvePointReport",
    "twelve_point_report",
    "random_legal_loop",
]


def _sign(n: int) -> int:
    return (n > 0) - (n < 0)


@dataclass(frozen=True)
class LegalLoop:
    vectors: tuple[Vec, ...]

    def __post_init__(self):
        vs = tuple(vec(v) for v in self.vectors)
        d = len(vs)
        if d < 2:
            raise ValidationError("a legal loop needs at least 2 vectors", rule="length")
        for i, v in enumerate(vs):
            if not is_primitive(v):
                raise ValidationError(f"v{i} = {v} is not primitive", index=i, rule="primitive")
        for i in range(d):
            u, w = vs[i], vs[(i + 1) % d]
            if u == w:
                continue
            if det2(u, w) == 0:
                # distinct primitive parallel vectors are antiparallel
                raise ValidationError(f"v{i} = {u} and its successor {w} are antiparallel", index=i, rule="antiparallel")
            if triangle_interior_count(u, w) != 0:
                raise ValidationError(
                    f"triangle 0, {u}, {w} contains interior lattice points", index=i, rule="nonempty-triangle"
                )
        object.__setattr__(self, "vectors", vs)

    def __len__(self):
        return len(self.vectors)

    @property
    def is_reduced(self) -> bool:
        d = len(self.vectors)
        return all(self.vectors[i] != self.vectors[(i + 1) % d] for i in range(d))


def validate_legal(vs: Sequence) -> LegalLoop:
    return LegalLoop(tuple(vs))


def reduce(loop: LegalLoop) -> LegalLoop:
    """Drop repeated consecutive vectors (cyclically)."""
    vs = loop.vectors
    if all(v == vs[0] for v in vs):
        raise ValidationError("degenerate loop: all vectors are equal", rule="degenerate")
    d = len(vs)
    kept = [vs[i] for i in range(d) if vs[i] != vs[(i + 1) % d]]
    return LegalLoop(tuple(kept))


def refine(loop: LegalLoop) -> UnimodularSequence:
    """Insert every lattice point of every side, giving a unimodular sequence."""
    if not loop.is_reduced:
        raise ValidationError("refine expects a reduced legal loop", rule="not-reduced")
    vs = loop.vectors
    d = len(vs)
    out = []
    for i in range(d):
        out.extend(segment_lattice_points(vs[i], vs[(i + 1) % d])[:-1])
    try:
        return UnimodularSequence(tuple(out))
    except ValidationError as exc:
        raise ConsistencyError(f"refinement is not unimodular: {exc}") from None


def dual(loop: LegalLoop) -> LegalLoop:
    """The dual loop ``w_i = (v_i - v_{i-1}) / det(v_{i-1}, v_i)`` of the reduced loop."""
    vs = reduce(loop).vectors
    ws = []
    for i in range(len(vs)):
        prev, cur = vs[i - 1], vs[i]
        dt = det2(prev, cur)
        diff = cur - prev
        if diff.x % dt or diff.y % dt:
            raise ConsistencyError(f"dual vector w{i} = {diff}/{dt} is not integral")
        ws.append(Vec(diff.x // dt, diff.y // dt))
    try:
        return LegalLoop(tuple(ws))
    except ValidationError as exc:
        raise ConsistencyError(f"dual is not a legal loop: {exc}") from None


def signed_boundary(loop: LegalLoop) -> int:
    vs = loop.vectors
    d = len(vs)
    return sum(
        _sign(det2(vs[i], vs[(i + 1) % d])) * segment_lattice_count(vs[i], vs[(i + 1) % d]) for i in range(d)
    )


def winding(loop: LegalLoop) -> int:
    return vector_rotation_number(reduce(loop).vectors)


class TwelvePointReport(NamedTuple):
    B: int
    Bdual: int
    r: int
    holds: bool


def twelve_point_report(loop: LegalLoop) -> TwelvePointReport:
    b = signed_boundary(loop)
    bd = signed_boundary(dual(loop))
    r = winding(loop)
    return TwelvePointReport(b, bd, r, b + bd == 12 * r)


def _coarsen(vs: list[Vec], rng: random.Random, attempts: int) -> list[Vec]:
    # Deleting v_j keeps legality whenever the resulting triangle stays empty.
    for _ in range(attempts):
        if len(vs) <= 3:
            break
        j = rng.randrange(len(vs))
        cand = vs[:j] + vs[j + 1:]
        if len(set(cand)) < 2:
            continue
        try:
            LegalLoop(tuple(cand))
        except ValidationError:
            continue
        vs = cand
    return vs


def _insert_run(vs: list[Vec], rng: random.Random, bound: int) -> list[Vec]:
    # v, w, 2w - v, 3w - 2v, ... are pairwise adjacent bases; going out
    # along the line and back keeps the sequence unimodular.
    i = rng.randrange(len(vs))
    v, w = vs[i], vs[(i + 1) % len(vs)]
    step = w - v
    run = []
    x = w
    for _ in range(rng.randint(1, 4)):
        x = x + step
        if max(abs(x.x), abs(x.y)) > bound:
            break
        run.append(x)
    if not run:
        return vs
    back = run[-2::-1] + [w]
    return vs[:i + 2] + run + back + vs[i + 2:] if i + 1 < len(vs) else vs + run + back


def random_legal_loop(seed: int, d: int | None = None, bound: int = 10) -> LegalLoop:
    """A seeded random legal loop built by perturbing a unimodular sequence.

    Collinear out-and-back runs are spliced in, vectors are then deleted at
    random whenever the loop stays legal (this merges runs into sides with
    interior lattice points), and finally a few vectors are duplicated so
    that the loop is usually not reduced.
    """
    rng = random.Random(seed)
    if d is None:
        d = rng.randint(2, 16)
    vs = list(random_unimodular(d, rng.randrange(2**32), bound).vectors)
    for _ in range(rng.randint(0, 3)):
        vs = _insert_run(vs, rng, bound)
    vs = _coarsen(vs, rng, attempts=3 * len(vs))
    for _ in range(rng.randint(0, 2)):
        j = rng.randrange(len(vs))
        vs.insert(j, vs[j])
    return LegalLoop(tuple(vs))
