import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latpoly.errors import ValidationError
from latpoly.lattice_core import (
    Vec,
    det2,
    is_primitive,
    primitive_part,
    quadrant,
    segment_lattice_count,
    segment_lattice_points,
    triangle_interior_count,
    turn_quarters,
    vec,
    vector_rotation_number,
    winding_number,
)

from oracles import angle_rotation, angle_winding, brute_segment_points, brute_triangle_interior

coord = st.integers(-12, 12)
point = st.tuples(coord, coord)


def test_vec_rejects_non_integers():
    with pytest.raises(ValidationError):
        vec((1.0, 2))
    with pytest.raises(ValidationError):
        vec((True, 0))
    assert vec((3, -4)) == Vec(3, -4)


def test_primitive_part():
    assert primitive_part((6, -4)) == (3, -2)
    assert is_primitive((3, -2)) and not is_primitive((2, 4))
    with pytest.raises(ValidationError):
        primitive_part((0, 0))


def test_quadrants_are_half_open():
    assert [quadrant(v) for v in [(1, 0), (0, 1), (-1, 0), (0, -1)]] == [0, 1, 2, 3]
    assert quadrant((1, 1)) == 0 and quadrant((-1, 1)) == 1
    with pytest.raises(ValidationError):
        quadrant((0, 0))


def test_antiparallel_turn_is_rejected():
    with pytest.raises(ValidationError) as exc:
        turn_quarters((1, 2), (-1, -2))
    assert exc.value.rule == "antiparallel"


def test_rotation_of_the_square_directions():
    assert vector_rotation_number([(1, 0), (0, 1), (-1, 0), (0, -1)]) == 1
    assert vector_rotation_number([(1, 0), (0, -1), (-1, 0), (0, 1)]) == -1
    assert vector_rotation_number([(1, 0), (1, 1)]) == 0


@given(point, point)
def test_segment_points_match_brute_force(p, q):
    pts = segment_lattice_points(p, q)
    assert sorted(pts) == sorted(brute_segment_points(p, q))
    assert len(pts) == segment_lattice_count(p, q) + 1 or p == q


@settings(max_examples=300)
@given(point, point)
def test_triangle_interior_matches_brute_force(u, v):
    if det2(u, v) == 0:
        with pytest.raises(ValidationError):
            triangle_interior_count(u, v)
    else:
        assert triangle_interior_count(u, v) == brute_triangle_interior(u, v)


@settings(max_examples=200)
@given(st.lists(point.filter(lambda v: v != (0, 0)), min_size=2, max_size=9))
def test_rotation_matches_angle_sum(vs):
    n = len(vs)
    if any(det2(vs[i], vs[(i + 1) % n]) == 0 and vs[i][0] * vs[(i + 1) % n][0] + vs[i][1] * vs[(i + 1) % n][1] < 0 for i in range(n)):
        return
    assert vector_rotation_number(vs) == angle_rotation(vs)


@settings(max_examples=200)
@given(st.lists(point, min_size=3, max_size=8), point)
def test_winding_matches_angle_sum(loop, p):
    n = len(loop)
    from latpoly.lattice_core import point_on_segment

    if any(point_on_segment(p, loop[i], loop[(i + 1) % n]) for i in range(n)):
        with pytest.raises(ValidationError):
            winding_number(loop, p)
        return
    assert winding_number(loop, p) == angle_winding(loop, p)
