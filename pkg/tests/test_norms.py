import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import angle, linear_maps, point, polygons
from normpi.errors import DomainError, SingularMap, ZeroDirection
from normpi.geom import LinearMap2, Point2, symmetric_hull
from normpi.norms import (
    LinearImage,
    Lp,
    Polygonal,
    as_polygon,
    boundary_point,
    describe,
    distance,
    flatten,
    gauge,
    gauge_array,
    pushforward,
    support_point,
)

ps = st.sampled_from([1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 10.0, math.inf])


@st.composite
def norms(draw):
    kind = draw(st.integers(0, 2))
    if kind == 0:
        return Polygonal(draw(polygons()))
    if kind == 1:
        return Lp(draw(ps))
    return LinearImage(draw(linear_maps()), Lp(draw(ps)))


def test_examples():
    assert gauge(Lp(1), (3, -4)) == 7.0
    assert gauge(Lp(2), (3, 4)) == 5.0
    assert gauge(Lp(math.inf), (3, -4)) == 4.0
    assert gauge(Lp(4), (1, 1)) == 2 ** 0.25
    square = Polygonal(symmetric_hull([(1, 1), (-1, 1)]))
    assert gauge(square, (0.5, -2.0)) == 2.0


def test_lp_validation():
    with pytest.raises(DomainError):
        Lp(0.5)
    with pytest.raises(DomainError):
        Lp(float("nan"))
    assert Lp(2e6).p == math.inf


def test_extreme_scale_does_not_overflow():
    assert gauge(Lp(3), (1e300, 1e300)) == pytest.approx(2 ** (1 / 3) * 1e300)
    assert gauge(Lp(3), (1e-300, 0.0)) == 1e-300


def test_singular_linear_image():
    with pytest.raises(SingularMap):
        LinearImage(LinearMap2(1, 2, 2, 4), Lp(2))


def test_flatten_and_polygon_images():
    T = LinearMap2(2.0, 0.0, 0.0, 1.0)
    X = LinearImage(T, LinearImage(T, Lp(1)))
    M, base = flatten(X)
    assert M == LinearMap2(4.0, 0.0, 0.0, 1.0) and base == Lp(1)
    assert as_polygon(X).vertices[0] == (4.0, 0.0)
    assert as_polygon(Lp(3)) is None


def test_support_point():
    assert support_point(Lp(2), (0.0, 3.0)) == (0.0, 1.0)
    assert support_point(Lp(math.inf), (1.0, 0.0)) == (1.0, 1.0)
    with pytest.raises(ZeroDirection):
        support_point(Lp(2), (0.0, 0.0))


def test_describe_round_trip_shape():
    d = describe(LinearImage(LinearMap2(1, 1, 0, 1), Lp(math.inf)))
    assert d == {"type": "linear_image", "matrix": [[1, 1], [0, 1]], "inner": {"type": "lp", "p": "inf"}}


@given(point)
def test_l2_matches_hypot(v):
    assert gauge(Lp(2), v) == pytest.approx(math.hypot(*v), rel=1e-15, abs=0)


@given(norms(), point, st.floats(-10, 10))
def test_homogeneity(X, v, c):
    g = gauge(X, v)
    assert abs(gauge(X, (c * v[0], c * v[1])) - abs(c) * g) <= 1e-12 * (1 + abs(c) * g)


@given(norms(), point)
def test_symmetry(X, v):
    g = gauge(X, v)
    assert abs(gauge(X, (-v[0], -v[1])) - g) <= 1e-12 * g


@given(norms(), point, point)
def test_triangle(X, u, v):
    gu, gv = gauge(X, u), gauge(X, v)
    assert gauge(X, (u[0] + v[0], u[1] + v[1])) <= gu + gv + 1e-9 * (gu + gv)


@given(polygons())
def test_vertex_gauge(P):
    X = Polygonal(P)
    for v in P.vertices:
        assert abs(gauge(X, v) - 1.0) <= 1e-12


@given(norms(), linear_maps(cond_max=1e3), point)
def test_pushforward_identity(X, T, v):
    g = gauge(X, v)
    assert abs(gauge(pushforward(T, X), T(v)) - g) <= 1e-9 * g


@given(norms(), angle)
def test_boundary_point_is_unit(X, t):
    assert abs(gauge(X, boundary_point(X, t)) - 1.0) <= 1e-12


@given(norms(), angle)
def test_support_point_maximizes(X, t):
    d = Point2(math.cos(t), math.sin(t))
    w = support_point(X, d)
    assert abs(gauge(X, w) - 1.0) <= 1e-9
    for s in np.linspace(0, 2 * math.pi, 90, endpoint=False):
        assert d.dot(boundary_point(X, s)) <= d.dot(w) + 1e-9


@given(norms(), st.lists(point, min_size=1, max_size=20))
def test_gauge_array_matches_scalar(X, pts):
    arr = gauge_array(X, np.array(pts, dtype=float))
    for v, g in zip(pts, arr):
        assert g == pytest.approx(gauge(X, v), rel=1e-12, abs=1e-300)


@given(norms(), point, point)
def test_distance_is_symmetric(X, p, q):
    assert distance(X, p, q) == pytest.approx(distance(X, q, p), rel=1e-12, abs=0)
