from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latpoly.errors import ValidationError
from latpoly.multi_polygon import Triple, count_sharp, ehrhart, is_all_plus, rotation_C
from latpoly.realizability import (
    FamilyTag,
    Feasibility,
    GENERATOR_POINT,
    convex_witness,
    decompose,
    enumerate_convex_polygons,
    family_feasible,
    generators,
    in_A,
    is_convex,
    polygon_feasible,
    realize_any,
    realize_polygon,
    realize_unimodular,
    scott_feasible,
)
from latpoly.unimodular import make_unimodular

H = Fraction(1, 2)


def test_generators_pass_through_the_common_point():
    g = generators()
    for p in (g.area, g.half, g.turn, g.area_rev, g.half_rev, g.turn_rev):
        assert GENERATOR_POINT in p.vertices
        assert count_sharp(p) == ehrhart(p)(1)
    assert ehrhart(g.turn) == Triple(0, 0, -1)


def test_membership():
    assert in_A(Fraction(3, 2), Fraction(3, 2), 1)
    assert not in_A(H, 1, 0)
    assert in_A(-H, H, 2)
    assert not in_A(0, 0, H)


def test_decomposition():
    assert decompose(-H, H, 2) == (-1, 1, -2)
    with pytest.raises(ValidationError):
        decompose(H, 1, 0)


def test_zero_triple_is_realized_by_cancellation():
    p = realize_any(0, 0, 0)
    assert ehrhart(p) == Triple(0, 0, 0) and len(p) == 12


@pytest.mark.parametrize("t", [(1, 0, 0), (-H, H, 2), (3, -2, -3), (H, -H, 0)])
def test_realize_any(t):
    p = realize_any(*t)
    assert ehrhart(p) == Triple(*t)
    assert count_sharp(p) == Triple(*t)(1)


def test_realize_unimodular_examples():
    for a, c in [(Fraction(3, 2), 1), (3, 2), (0, 5)]:
        p = realize_unimodular(a, c)
        assert ehrhart(p) == Triple(a, a, c)
        assert make_unimodular(p.vertices).eps == p.signs
    with pytest.raises(ValidationError):
        realize_unimodular(Fraction(1, 3), 0)


def test_convex_predicate():
    assert scott_feasible(Fraction(9, 2), Fraction(9, 2), 1)
    assert not scott_feasible(1, 3, 1)
    assert not scott_feasible(Fraction(3, 2), Fraction(3, 2), 2)


def test_polygon_predicate():
    assert polygon_feasible(5, 3, 1)
    assert not polygon_feasible(1, 3, 1)
    assert not polygon_feasible(2, 2, 0)
    # eight boundary points and area 2 would need -1 interior points
    assert not polygon_feasible(2, 4, 1)


def test_realize_polygon_branches():
    p = realize_polygon(5, 3)
    assert ehrhart(p) == Triple(5, 3, 1) and is_convex(p)
    tri = realize_polygon(H, Fraction(3, 2))
    assert set(tri.vertices) == {(0, 0), (1, 0), (0, 1)}
    stair = realize_polygon(5, 5)  # one interior point, ten boundary points
    assert ehrhart(stair) == Triple(5, 5, 1) and not is_convex(stair)
    assert set(realize_polygon(3, 4).vertices) == {(0, 0), (6, 0), (0, 1)}
    assert is_all_plus(stair) and rotation_C(stair) == 1
    with pytest.raises(ValidationError):
        realize_polygon(2, 4)


@given(st.integers(0, 30), st.integers(3, 70))
def test_convex_witness_counts(i, b):
    if not (i == 0 or b <= 2 * i + 6 or (i, b) == (1, 9)):
        with pytest.raises(ValidationError):
            convex_witness(i, b)
        return
    from latpoly.multi_polygon import from_polygon

    p = from_polygon(convex_witness(i, b))
    t = ehrhart(p)
    assert is_convex(p)
    assert 2 * t.b == b and t.interior(1) == i


def test_enumeration_small():
    polys = enumerate_convex_polygons(1)
    keys = {tuple(sorted(p.vertices)) for p in polys}
    assert ((0, 0), (0, 1), (1, 0), (1, 1)) in keys
    assert ((0, 0), (0, 1), (1, 0)) in keys and ((0, 0), (0, 1), (1, 1)) in keys
    assert len(polys) == 5
    assert all(rotation_C(p) == 1 for p in polys)


def test_family_examples():
    assert family_feasible(0, 2, 0, "all_plus") is Feasibility.FEASIBLE
    assert family_feasible(1, 2, 0, FamilyTag.ALL_PLUS) is Feasibility.FEASIBLE
    assert family_feasible(0, 1, 0, "all_plus") is Feasibility.INFEASIBLE
    assert family_feasible(3, 3, 2, "left_turning_all_plus") is Feasibility.FEASIBLE
    assert family_feasible(H, Fraction(5, 2), 2, "left_turning_all_plus") is Feasibility.UNKNOWN
    assert family_feasible(H, Fraction(5, 2), 2, "all_plus") is Feasibility.UNKNOWN
    assert family_feasible(1, 2, 2, "all_plus") is Feasibility.INFEASIBLE
    assert family_feasible(1, 2, 0, "left_turning_all_plus") is Feasibility.INFEASIBLE
    assert family_feasible(H, 1, 0, "any_multipolygon") is Feasibility.INFEASIBLE
    assert family_feasible(2, 2, 5, "unimodular") is Feasibility.FEASIBLE
    assert family_feasible(2, 3, 5, "unimodular") is Feasibility.INFEASIBLE


def test_family_all_plus_small_c():
    assert family_feasible(H, Fraction(3, 2), 1, "all_plus") is Feasibility.FEASIBLE
    assert family_feasible(-H, Fraction(3, 2), 1, "all_plus") is Feasibility.INFEASIBLE
    assert family_feasible(-H, Fraction(3, 2), -1, "all_plus") is Feasibility.FEASIBLE
    assert family_feasible(H, Fraction(3, 2), -1, "all_plus") is Feasibility.INFEASIBLE
    assert family_feasible(-9, 3, -1, "all_plus") is Feasibility.FEASIBLE
