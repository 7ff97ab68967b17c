from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projevolute.errors import AtInfinity, DegenerateInput, ZeroResult
from projevolute.projective import (
    LINE,
    POINT,
    HomTriple,
    ProjMap,
    affine_chart,
    apply_map,
    collinear,
    cross,
    dot3,
    transform_from_correspondence,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def P(a, b, c):
    return HomTriple.point(F(a), F(b), F(c))


STANDARD_FRAME = [P(1, 0, 0), P(0, 1, 0), P(0, 0, 1), P(1, 1, 1)]


def test_cross_of_axes_points_is_line_at_infinity():
    line = cross(P(1, 0, 0), P(0, 1, 0))
    assert line.kind == LINE
    assert line == HomTriple.line(0, 0, 1)


def test_cross_componentwise():
    w = cross(P(0, -1, 1), P(0, 1, 0))
    assert w.coords == (-1, 0, 0)


def test_cross_of_equal_points_raises():
    with pytest.raises(ZeroResult):
        cross(P(1, 2, 3), P(2, 4, 6))


def test_cross_of_two_lines_is_a_point():
    p = cross(HomTriple.line(1, 0, 0), HomTriple.line(0, 1, 0))
    assert p.kind == POINT and p == P(0, 0, 1)


def test_cross_point_with_line_rejected():
    with pytest.raises(ValueError):
        cross(P(1, 0, 0), HomTriple.line(0, 1, 0))


def test_zero_triple_rejected():
    with pytest.raises(ZeroResult):
        HomTriple(0, 0, 0)


def test_collinear_examples():
    assert collinear(P(1, 0, 0), P(0, 1, 0), P(1, 1, 0))
    assert not collinear(P(1, 0, 0), P(0, 1, 0), P(0, 0, 1))


def test_frame_vertices_collinear_on_locus():
    # V4, V5, V1 of the normalized pentagon frame when x + y + 1 = 0
    x = F(3, 7)
    y = -1 - x
    assert collinear(P(-1, 0, 1), P(x, y, 1), P(0, -1, 1))
    assert not collinear(P(-1, 0, 1), P(x, y + 1, 1), P(0, -1, 1))


def test_float_collinearity_is_scale_aware():
    p, q, r = HomTriple(1e6, 0.0, 1.0), HomTriple(0.0, 1e6, 1.0), HomTriple(5e5, 5e5, 1.0)
    assert collinear(p, q, r)
    assert not collinear(HomTriple(1.0, 0.0, 1.0), HomTriple(0.0, 1.0, 1.0), HomTriple(0.5, 0.5 + 1e-6, 1.0))


def test_affine_chart():
    assert affine_chart(P(3, 4, 1)) == (3, 4)
    assert affine_chart(P(6, 8, 2)) == (3, 4)
    with pytest.raises(AtInfinity):
        affine_chart(P(1, 0, 0))


def test_equality_is_scale_invariant():
    assert P(1, 2, 3) == P(-2, -4, -6)
    assert HomTriple(1.0, 2.0, 3.0) == HomTriple(1e-3, 2e-3, 3e-3)
    assert P(1, 2, 3) != HomTriple.line(1, 2, 3)


def test_canonical_divides_by_last_nonzero():
    assert P(2, 4, 2).canonical() == (1, 2, 1)
    assert P(2, 4, 0).canonical() == (F(1, 2), 1, 0)
    assert P(3, 0, 0).canonical() == (1, 0, 0)


def test_identity_correspondence():
    M = transform_from_correspondence(STANDARD_FRAME, STANDARD_FRAME)
    m = M.m
    assert m[0][1] == m[0][2] == m[1][0] == m[1][2] == m[2][0] == m[2][1] == 0
    assert m[0][0] == m[1][1] == m[2][2] != 0


def test_correspondence_moves_fourth_point():
    dst = STANDARD_FRAME[:3] + [P(2, -3, 5)]
    M = transform_from_correspondence(STANDARD_FRAME, dst)
    for s, d in zip(STANDARD_FRAME, dst):
        assert apply_map(M, s) == d


def test_correspondence_rejects_collinear_source():
    with pytest.raises(DegenerateInput):
        transform_from_correspondence([P(1, 0, 0), P(0, 1, 0), P(1, 1, 0), P(0, 0, 1)], STANDARD_FRAME)


def test_apply_map_identity_and_scalar():
    p = P(3, -1, 2)
    assert apply_map(ProjMap.identity(), p) == p
    two = ProjMap(((2, 0, 0), (0, 2, 0), (0, 0, 2)))
    assert apply_map(two, p) == p


def test_apply_map_sends_lines_consistently():
    M = ProjMap(((1, 2, 0), (0, 1, 3), (1, 0, 1)))
    p, q = P(1, 2, 1), P(-3, 1, 2)
    assert apply_map(M, cross(p, q)) == cross(apply_map(M, p), apply_map(M, q))


def test_composition_is_matrix_product():
    A = ProjMap(((1, 2, 0), (0, 1, 3), (1, 0, 1)))
    B = ProjMap(((2, 0, 1), (1, 1, 0), (0, 3, 1)))
    p = P(1, -2, 5)
    assert apply_map(A @ B, p) == apply_map(A, apply_map(B, p))


@given(st.tuples(rationals, rationals, rationals), st.tuples(rationals, rationals, rationals))
def test_cross_is_orthogonal_to_inputs(u, v):
    try:
        w = cross(HomTriple.point(*u), HomTriple.point(*v))
    except ZeroResult:
        return
    assert dot3(w.coords, u) == 0 and dot3(w.coords, v) == 0


@given(st.tuples(rationals, rationals, rationals), st.tuples(rationals, rationals, rationals),
       rationals.filter(lambda r: r != 0))
def test_cross_scale_invariance(u, v, r):
    try:
        w = cross(HomTriple.point(*u), HomTriple.point(*v))
    except ZeroResult:
        return
    assert cross(HomTriple.point(*u).scaled(r), HomTriple.point(*v)) == w


matrices = st.tuples(*[st.tuples(rationals, rationals, rationals)] * 3).map(ProjMap)


@settings(max_examples=50)
@given(matrices, st.lists(st.tuples(rationals, rationals), min_size=4, max_size=4))
def test_correspondence_round_trip(M, pts):
    if M.is_singular():
        return
    src = [HomTriple.affine(x, y) for x, y in pts]
    try:
        dst = [apply_map(M, p) for p in src]
        N = transform_from_correspondence(src, dst)
    except (DegenerateInput, ZeroResult):
        return
    assert all(apply_map(N, s) == d for s, d in zip(src, dst))


@settings(max_examples=50)
@given(matrices, st.lists(st.tuples(rationals, rationals), min_size=3, max_size=3))
def test_collinearity_is_projectively_invariant(M, pts):
    if M.is_singular():
        return
    p, q, r = (HomTriple.affine(x, y) for x, y in pts)
    assert collinear(p, q, r) == collinear(apply_map(M, p), apply_map(M, q), apply_map(M, r))
