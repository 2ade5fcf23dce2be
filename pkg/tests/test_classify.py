import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import angle, linear_maps, polygons
from normpi.classify import (
    Generic,
    LinearlyRegularHexagon,
    Parallelogram,
    angle_length_margin,
    classify_extremal,
    euclidean_test,
    quarter_turn_basis,
    quarter_turn_pi_check,
    tangent_defect,
)
from normpi.errors import PreconditionError
from normpi.geom import LinearMap2, Point2, symmetric_hull
from normpi.norms import LinearImage, Lp, Polygonal
from normpi.pivalue import make_xt, pi_value

REGULAR_HEXAGON = [(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(3)]


def test_tags():
    assert isinstance(classify_extremal(make_xt(0.0).ball), LinearlyRegularHexagon)
    assert isinstance(classify_extremal(make_xt(0.5).ball), Generic)
    assert isinstance(classify_extremal(make_xt(1.0).ball), Parallelogram)
    assert classify_extremal(make_xt(0.0).ball).u == (1.0, 0.0)


def test_quarter_turn_basis_examples(square):
    q = quarter_turn_basis(square)
    assert q.S == LinearMap2.rot90()
    assert quarter_turn_basis(make_xt(0.5).ball) is None
    T = LinearMap2(1.0, 1.0, 0.0, 1.0)
    q = quarter_turn_basis(square.mapped(T))
    assert (q.S @ q.S + LinearMap2.identity()).max_abs() <= 1e-12


def test_euclidean_examples():
    assert euclidean_test(Lp(2))[0]
    ok, resid = euclidean_test(Lp(4))
    assert not ok and resid >= 4 - 2 * math.sqrt(2) - 1e-12
    assert euclidean_test(LinearImage(LinearMap2(3, 1, 0, 0.2), Lp(2)))[0]
    assert not euclidean_test(Lp(math.inf))[0]


def test_euclidean_is_deterministic():
    assert euclidean_test(Lp(3), seed=5) == euclidean_test(Lp(3), seed=5)


def test_tangent_defect_examples():
    assert tangent_defect(Lp(2), 256) == 0.0
    assert tangent_defect(Lp(math.inf), 256) >= 0.05
    assert tangent_defect(Lp(4)) > 0.0


def test_angle_length_worked_examples():
    v, p, q = (1.0, 0.0), (1.0, -1.0), (1.0, 1.0)
    assert angle_length_margin(Lp(2), v, p, q) == pytest.approx(2 - math.pi / 2, abs=1e-9)
    assert angle_length_margin(Lp(math.inf), v, p, q) == pytest.approx(2 - math.pi / 2, abs=1e-9)
    assert angle_length_margin(Lp(1), v, (1.0, -0.5), (1.0, 0.5)) == pytest.approx(
        1 - 2 * math.atan(0.5), abs=1e-9
    )


def test_angle_length_preconditions():
    with pytest.raises(PreconditionError):
        angle_length_margin(Lp(2), (1.0, 0.0), (2.0, 0.0), (1.0, 1.0))
    with pytest.raises(PreconditionError):
        angle_length_margin(make_xt(0.5), (1.0, 0.0), (1.0, -1.0), (1.0, 1.0))
    with pytest.raises(PreconditionError):
        angle_length_margin(Lp(2), (0.0, 0.0), (1.0, 0.0), (1.0, 1.0))


def test_quarter_turn_pi_check():
    for p in (1.0, 1.25, 3.0, math.inf):
        pi, ok = quarter_turn_pi_check(Lp(p))
        assert ok and pi.lower >= math.pi - 1e-6
    with pytest.raises(PreconditionError):
        quarter_turn_pi_check(make_xt(0.5))


@given(linear_maps(cond_max=1e3), st.integers(0, 2))
def test_tags_are_linear_invariant(T, which):
    ball = [make_xt(1.0).ball, symmetric_hull(REGULAR_HEXAGON), make_xt(0.3).ball][which]
    assert classify_extremal(ball.mapped(T)).name == classify_extremal(ball).name


@given(linear_maps(cond_max=1e3))
def test_hexagon_images_have_pi_three(T):
    ball = symmetric_hull([T(p) for p in REGULAR_HEXAGON])
    assert isinstance(classify_extremal(ball), LinearlyRegularHexagon)
    assert abs(pi_value(Polygonal(ball)).lower - 3.0) <= 1e-9


@given(polygons(max_points=6))
def test_quarter_symmetrized_polygons(P):
    half = P.vertices[: P.n // 2]
    Q = symmetric_hull(list(half) + [v.rot90() for v in half])
    assert pi_value(Polygonal(Q)).lower >= math.pi - 1e-9
    assert quarter_turn_basis(Q) is not None


@given(polygons(max_points=6), linear_maps(cond_max=10.0))
def test_quarter_turn_basis_on_images(P, T):
    half = P.vertices[: P.n // 2]
    Q = symmetric_hull(list(half) + [v.rot90() for v in half])
    # near-coincident vertices may be merged by the collinear cleanup
    assume({v.rot90() for v in Q.vertices} == set(Q.vertices))
    q = quarter_turn_basis(Q.mapped(T), 1e-9)
    assert q is not None
    assert (q.S @ q.S + LinearMap2.identity()).max_abs() <= 1e-9


@given(polygons())
def test_polygons_are_not_round(P):
    X = Polygonal(P)
    assert tangent_defect(X, 64) > 0.0
    assert not euclidean_test(X, 1e-6, 8)[0]


@given(st.sampled_from([1.0, 2.0, math.inf]), angle, st.floats(-3, 3), st.floats(-3, 3))
def test_angle_length_margin_positive(p, t, s1, s2):
    if s1 == s2:
        return
    v = Point2(math.cos(t), math.sin(t))
    a, b = v + v.rot90() * s1, v + v.rot90() * s2
    if a == b:
        return
    # the margin is second order in |s1 - s2|; allow rounding of the coordinates
    assert angle_length_margin(Lp(p), v, a, b) >= -1e-14
