"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line (printed in the pytest terminal summary
and when this file is run as a script).  All comparisons are exact.
"""

import io
import random
import sys
from fractions import Fraction

from latpoly.cli import run_command
from latpoly.errors import ConsistencyError
from latpoly.legal_loop import LegalLoop, dual, random_legal_loop, twelve_point_report
from latpoly.lattice_core import vector_rotation_number
from latpoly.multi_polygon import (
    Triple,
    VanishingPolygon,
    count_sharp,
    dilate,
    ehrhart,
    is_all_plus,
    is_left_turning,
    simplify,
)
from latpoly.multi_polygon import interior as interior_of
from latpoly.realizability import (
    enumerate_convex_polygons,
    in_A,
    polygon_feasible,
    realize_any,
    realize_unimodular,
    scott_feasible,
)
from latpoly.unimodular import make_unimodular, random_unimodular, reduction_trace, rotation_by_reduction, rotation_formula

from acceptance_log import record
from corpus import (
    LOOP_A,
    LOOP_A_DUAL,
    LOOP_B,
    LOOP_B_DUAL,
    all_plus_loops,
    example_multipolygons,
    left_turning_all_plus,
    multipolygon_corpus,
    simplification_cases,
)
from oracles import angle_rotation

HALVES = [Fraction(k, 2) for k in range(-6, 7)]
CS = range(-3, 4)


def _cli(argv):
    out = io.StringIO()
    code = run_command(argv, out=out, err=io.StringIO())
    return code, out.getvalue().strip()


def _doc(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_criterion_01_example_rotations(tmp_path):
    got = []
    for name, vs, want in [("a", LOOP_A, 1), ("b", LOOP_B, 2)]:
        path = _doc(tmp_path, f"{name}.json", '{"kind":"unimodular","vertices":%s}' % str([list(v) for v in vs]).replace(" ", ""))
        for m in ("formula", "reduction", "oracle"):
            code, out = _cli(["rotation", path, "--method", m])
            got.append((code, out) == (0, str(want)))
        s = make_unimodular(vs)
        got.append(rotation_formula(s) == rotation_by_reduction(s) == vector_rotation_number(vs) == want)
    assert record(1, "example rotations are 1 and 2 by formula, reduction and oracle", all(got))


def test_criterion_02_example_duals():
    ok = [list(dual(LegalLoop(LOOP_A)).vectors) == LOOP_A_DUAL, list(dual(LegalLoop(LOOP_B)).vectors) == LOOP_B_DUAL]
    ra, rb = twelve_point_report(LegalLoop(LOOP_A)), twelve_point_report(LegalLoop(LOOP_B))
    ok.append(tuple(ra) == (3, 9, 1, True) and ra.B + ra.Bdual == 12)
    ok.append(tuple(rb) == (6, 18, 2, True) and rb.B + rb.Bdual == 24)
    assert record(2, "duals match vertex for vertex; twelve reports (3,9,1) and (6,18,2)", all(ok))


def test_criterion_03_example_triples(tmp_path):
    p, q = example_multipolygons()
    ok = ehrhart(p) == Triple(Fraction(3, 2), Fraction(3, 2), 1) and ehrhart(q) == Triple(3, 3, 2)
    pa = _doc(tmp_path, "a.json", '{"kind":"unimodular","vertices":[[1,0],[0,1],[-1,0],[0,-1],[-1,-1]]}')
    pb = _doc(tmp_path, "b.json", '{"kind":"unimodular","vertices":[[1,0],[-1,1],[0,-1],[1,1],[-1,0],[1,-1]]}')
    ok = ok and _cli(["analyze", pa])[1].startswith("A=3/2 B=3 C=1 sharp=4")
    ok = ok and _cli(["analyze", pb])[1].startswith("A=3 B=6 C=2 sharp=8")
    assert record(3, "analyze gives (3/2,3/2,1) and (3,3,2)", ok)


def test_criterion_04_rotation_formula_equivalence():
    rng = random.Random(1)
    n, bad, big_a, steps = 0, 0, 0, 0
    for seed in range(1000):
        s = random_unimodular(rng.randint(2, 20), seed=seed, bound=50)
        try:
            f = rotation_formula(s)
            trace, base = reduction_trace(s)
        except ConsistencyError:
            bad += 1
            continue
        steps += len(trace)
        big_a += sum(abs(t.a_j) > 1 for t in trace)
        r = base + sum(t.delta for t in trace)
        if not (f == r == rotation_by_reduction(s) == vector_rotation_number(s.vectors) == angle_rotation(s.vectors)):
            bad += 1
        n += 1
    ok = n == 1000 and bad == 0 and big_a == 0
    assert record(4, "formula = reduction = oracle on 1000 unimodular sequences", ok, f"{steps} reduction steps, {bad} mismatches")


def test_criterion_05_twelve_point_at_scale():
    bad = 0
    for seed in range(500):
        rep = twelve_point_report(random_legal_loop(seed, bound=10))
        bad += not (rep.holds and rep.B + rep.Bdual == 12 * rep.r)
    assert record(5, "B + Bdual = 12 r on 500 random legal loops", bad == 0, f"{bad} failures")


def test_criterion_06_generalized_pick():
    corpus = multipolygon_corpus()
    bad = 0
    for p in corpus:
        t = ehrhart(p)
        bad += count_sharp(p) != t.a + t.b + t.c
        bad += count_sharp(interior_of(p)) != t.a - t.b + t.c
    ok = len(corpus) >= 200 and bad == 0
    assert record(6, "lattice count = A + B/2 + C and interior = A - B/2 + C", ok, f"{len(corpus)} multi-polygons")


def test_criterion_07_ehrhart_reciprocity():
    corpus = multipolygon_corpus()
    bad = 0
    for p in corpus:
        t = ehrhart(p)
        for m in (1, 2, 3, 4):
            bad += count_sharp(dilate(p, m)) != t(m)
            bad += count_sharp(dilate(interior_of(p), m)) != t.interior(m)
    assert record(7, "dilates m = 1..4 follow the Ehrhart polynomial and its reciprocal", bad == 0, f"{len(corpus)} x 4 x 2 counts")


def test_criterion_08_convex_enumeration():
    polys = enumerate_convex_polygons(3)
    bad = 0
    for p in polys:
        t = ehrhart(p)
        bad += not (t.c == 1 and scott_feasible(*t) and polygon_feasible(*t))
    assert record(8, "every convex polygon in [0,3]^2 satisfies the convex characterization", bad == 0, f"{len(polys)} polygons")


def test_criterion_09_realizer_round_trips():
    n_any = n_uni = bad = 0
    for a in HALVES:
        for c in CS:
            for b in HALVES:
                if in_A(a, b, c):
                    n_any += 1
                    p = realize_any(a, b, c)
                    bad += ehrhart(p) != Triple(a, b, c) or count_sharp(p) != Triple(a, b, c)(1)
            p = realize_unimodular(a, c)
            n_uni += 1
            t = ehrhart(p)
            bad += t != Triple(a, a, c) or t.a != t.b or make_unimodular(p.vertices).eps != p.signs
    assert record(9, "every grid triple is realized exactly", bad == 0, f"{n_any} general, {n_uni} unimodular")


def test_criterion_10_simplification_soundness():
    cases = simplification_cases()
    changed = []
    for p in cases:
        before, count = ehrhart(p), count_sharp(p)
        try:
            s = simplify(p)
        except VanishingPolygon as exc:
            if not (exc.triple == before == Triple(0, 0, 0)):
                changed.append((p, before, None))
            continue
        if ehrhart(s) != before or count_sharp(s) != count:
            changed.append((p, before, ehrhart(s)))
    detail = f"{len(cases)} cases, {len(changed)} changed"
    if changed:
        p, before, after = changed[0]
        detail += f"; first: {list(p.vertices)} signs {list(p.signs)} {before} -> {after}"
    assert record(10, "simplification keeps the triple and the lattice count", not changed and len(cases) >= 100, detail)


def test_criterion_11_subfamily_inequalities():
    lefts = left_turning_all_plus()
    plus = all_plus_loops()
    bad = 0
    tight = 0
    for p in lefts:
        t = ehrhart(p)
        B = 2 * t.b
        bad += not (B >= 2 * t.c + 1 and t.c >= 1)
        if B == 2 * t.c + 1:
            tight += 1
            bad += t.a < Fraction(1, 2)
    for p in plus + lefts:
        assert is_all_plus(p)
        t = ehrhart(p)
        if t.c != 0:
            bad += 2 * t.b < 2 * abs(t.c) + 1
    assert all(is_left_turning(p) for p in lefts)
    detail = f"{len(lefts)} left-turning ({tight} with B = 2C + 1), {len(plus)} all-plus"
    assert record(11, "left-turning and all-plus bounds hold", bad == 0 and tight > 0, detail)


if __name__ == "__main__":
    import pathlib
    import tempfile

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                if "tmp_path" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
                    with tempfile.TemporaryDirectory() as d:
                        fn(pathlib.Path(d))
                else:
                    fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
