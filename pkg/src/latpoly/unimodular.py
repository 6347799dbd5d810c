"""Unimodular sequences and their rotation numbers.

A cyclic sequence of lattice vectors is unimodular when every consecutive
pair is a lattice basis.  Three independent routes to its rotation number
are provided: the closed formula ``(sum a + 3 sum eps) / 12``, the inductive
reduction that deletes a longest vector at each step, and direct quadrant
counting from :mod:`latpoly.lattice_core`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConsistencyError, GenerationError, ValidationError
from .lattice_core import Vec, det2, dot2, is_primitive, vec, vector_rotation_number

__all__ = [
    "UnimodularSequence",
    "make_unimodular",
    "rotation_formula",
    "rotation_by_reduction",
    "reduction_trace",
    "ReductionStep",
    "random_unimodular",
    "lattice_complement",
]


@dataclass(frozen=True)
class UnimodularSequence:
    vectors: tuple[Vec, ...]
    eps: tuple[int, ...] = field(init=False)
    acoeffs: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        vs = tuple(vec(v) for v in self.vectors)
        d = len(vs)
        if d < 2:
            raise ValidationError("a unimodular sequence needs at least 2 vectors", rule="length")
        eps = []
        for i in range(d):
            e = det2(vs[i], vs[(i + 1) % d])
            if e not in (1, -1):
                raise ValidationError(
                    f"|det(v{i}, v{(i + 1) % d})| = {abs(e)}, expected 1", index=i, rule="unimodular"
                )
            eps.append(e)
        for i, v in enumerate(vs):
            if not is_primitive(v):
                raise ConsistencyError(f"vector {i} is not primitive despite unimodular neighbours")
        acoeffs = []
        for i in range(d):
            prev, nxt = vs[i - 1], vs[(i + 1) % d]
            a = -eps[i - 1] * eps[i] * det2(prev, nxt)
            rel = prev * eps[i - 1] + nxt * eps[i] + vs[i] * a
            if rel != (0, 0):
                raise ConsistencyError(f"three-term relation fails at index {i}: {rel}")
            acoeffs.append(a)
        object.__setattr__(self, "vectors", vs)
        object.__setattr__(self, "eps", tuple(eps))
        object.__setattr__(self, "acoeffs", tuple(acoeffs))

    def __len__(self):
        return len(self.vectors)

    def reversed(self) -> "UnimodularSequence":
        return UnimodularSequence(self.vectors[::-1])

    def transformed(self, m) -> "UnimodularSequence":
        """Apply the integer matrix ``((m00, m01), (m10, m11))`` to every vector."""
        (p, q), (r, s) = m
        return UnimodularSequence(tuple(Vec(p * v.x + q * v.y, r * v.x + s * v.y) for v in self.vectors))


def make_unimodular(vs: Sequence) -> UnimodularSequence:
    return UnimodularSequence(tuple(vs))


def rotation_formula(s: UnimodularSequence) -> int:
    total = sum(s.acoeffs) + 3 * sum(s.eps)
    q, r = divmod(total, 12)
    if r:
        raise ConsistencyError(f"sum(a) + 3 sum(eps) = {total} is not divisible by 12")
    return q


@dataclass(frozen=True)
class ReductionStep:
    d: int
    j: int
    a_j: int
    removed: tuple[int, ...]
    delta: int


def _quarter(num: int) -> int:
    q, r = divmod(num, 4)
    if r:
        raise ConsistencyError(f"reduction turn delta {num}/4 is not an integer")
    return q


def reduction_trace(s: UnimodularSequence) -> tuple[list[ReductionStep], int]:
    """Run the inductive reduction, returning its steps and the base-case value.

    At each step the longest vector ``v_j`` (smallest index on ties) is
    removed, together with ``v_{j-1}`` when ``a_j == 0``; the change of the
    rotation number is recorded.  The remainder of length 2 or 3 is
    evaluated directly.
    """
    steps = []
    cur = s
    while len(cur) > 3:
        d = len(cur)
        norms = [dot2(v, v) for v in cur.vectors]
        j = norms.index(max(norms))
        a_j = cur.acoeffs[j]
        e = cur.eps
        if a_j == 0:
            delta = _quarter(e[j - 2] + e[j - 1] + e[j] + e[j - 2] * e[j - 1] * e[j])
            removed = {(j - 1) % d, j}
        elif a_j in (1, -1):
            delta = _quarter((1 + e[j - 1] * e[j]) * a_j + e[j - 1] + e[j])
            removed = {j}
        else:
            raise ConsistencyError(f"longest vector {cur.vectors[j]} has a_j = {a_j}; expected |a_j| <= 1")
        steps.append(ReductionStep(d, j, a_j, tuple(sorted(removed)), delta))
        try:
            cur = UnimodularSequence(tuple(v for i, v in enumerate(cur.vectors) if i not in removed))
        except ValidationError as exc:
            raise ConsistencyError(f"reduced sequence is not unimodular: {exc}") from None
    base = 0 if len(cur) == 2 else vector_rotation_number(cur.vectors)
    return steps, base


def rotation_by_reduction(s: UnimodularSequence) -> int:
    steps, base = reduction_trace(s)
    return base + sum(step.delta for step in steps)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def lattice_complement(v) -> Vec:
    """Some ``w`` with ``det(v, w) == 1``; ``v`` must be primitive."""
    g, s, t = _egcd(v[0], v[1])
    # s*x + t*y = g = +-1, and det((x, y), (-t, s)) = s*x + t*y
    if g == -1:
        s, t = -s, -t
    elif g != 1:
        raise ValidationError(f"{tuple(v)} is not primitive", rule="primitive")
    w = Vec(-t, s)
    assert det2(v, w) == 1
    return w


def random_unimodular(d: int, seed: int, bound: int = 10, max_tries: int = 10_000) -> UnimodularSequence:
    """Seeded random unimodular sequence of length ``d`` with coordinates in [-bound, bound].

    Starts from a random lattice basis and grows it by two elementary
    insertions that keep every consecutive pair a basis: a single vector
    ``+-v_i +- v_{i+1}`` between two neighbours, or a back-and-forth spike
    ``(+-v_{i+1}, z)`` with ``z`` adjacent to ``v_{i+1}``.
    """
    if d < 2:
        raise ValidationError("d must be at least 2", rule="length")
    if bound < 1:
        raise ValidationError("bound must be positive", rule="bound")
    rng = random.Random(seed)

    def ok(v):
        return abs(v.x) <= bound and abs(v.y) <= bound

    for _ in range(max_tries):
        v = Vec(rng.randint(-bound, bound), rng.randint(-bound, bound))
        if is_primitive(v):
            break
    else:
        raise GenerationError("could not draw a primitive start vector")
    w = lattice_complement(v)
    for _ in range(max_tries):
        t = rng.randint(-3, 3)
        cand = (w + v * t) * rng.choice((1, -1))
        if ok(cand):
            break
    else:
        raise GenerationError("could not draw a bounded basis partner")
    vs = [v, cand]
    tries = 0
    while len(vs) < d:
        tries += 1
        if tries > max_tries:
            raise GenerationError(f"failed to grow a unimodular sequence to length {d} within bound {bound}")
        n = len(vs)
        i = rng.randrange(n)
        a, b = vs[i], vs[(i + 1) % n]
        if d - n >= 2 and rng.random() < 0.35:
            y = b * rng.choice((1, -1))
            z = (lattice_complement(b) + b * rng.randint(-3, 3)) * rng.choice((1, -1))
            if ok(y) and ok(z):
                vs[i + 1:i + 1] = [y, z]
        else:
            x = a * rng.choice((1, -1)) + b * rng.choice((1, -1))
            if ok(x):
                vs.insert(i + 1, x)
    return UnimodularSequence(tuple(vs))
