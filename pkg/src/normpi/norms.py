"""Norm descriptions and the Minkowski gauge.

A norm is one of three closed forms:

* ``Polygonal(ball)``: unit ball is a canonical symmetric polygon;
* ``Lp(p)``: the l^p norm, ``p`` in ``[1, inf]``;
* ``LinearImage(map, inner)``: the push-forward ``||v|| = ||map^-1 v||_inner``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import DomainError, SingularMap, ZeroDirection
from .geom import MIN_DET, LinearMap2, Point2, SymmetricPolygon, as_point, symmetric_hull

P_INF_CUTOFF = 1e6
MAX_DEPTH = 16


@dataclass(frozen=True)
class Polygonal:
    ball: SymmetricPolygon


@dataclass(frozen=True)
class Lp:
    p: float

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p) or p < 1.0:
            raise DomainError(f"l^p needs p >= 1, got {self.p!r}")
        if p > P_INF_CUTOFF:
            p = math.inf
        object.__setattr__(self, "p", p)


@dataclass(frozen=True)
class LinearImage:
    map: LinearMap2
    inner: "NormSpec"

    def __post_init__(self):
        if not abs(self.map.det()) >= MIN_DET:
            raise SingularMap(f"|det| = {abs(self.map.det()):.3g} < {MIN_DET:g}")
        if depth(self) > MAX_DEPTH:
            raise DomainError(f"LinearImage nesting deeper than {MAX_DEPTH}")


NormSpec = Union[Polygonal, Lp, LinearImage]


def depth(norm: NormSpec) -> int:
    d = 0
    while isinstance(norm, LinearImage):
        d += 1
        norm = norm.inner
    return d


def flatten(norm: NormSpec) -> tuple[LinearMap2, NormSpec]:
    """Compose nested LinearImage maps: returns (M, base) with norm = M base."""
    M = LinearMap2.identity()
    while isinstance(norm, LinearImage):
        M = M @ norm.map
        norm = norm.inner
    return M, norm


@lru_cache(maxsize=None)
def lp_polygon(p: float) -> SymmetricPolygon:
    if p == 1.0:
        return symmetric_hull([(1.0, 0.0), (0.0, 1.0)])
    if p == math.inf:
        return symmetric_hull([(1.0, 1.0), (-1.0, 1.0)])
    raise DomainError(f"l^{p} has no polygonal unit ball")


def as_polygon(norm: NormSpec) -> SymmetricPolygon | None:
    """The unit ball as a polygon, or None for a smooth (1 < p < inf) body."""
    if isinstance(norm, Polygonal):
        return norm.ball
    M, base = flatten(norm)
    if isinstance(base, Polygonal):
        ball = base.ball
    elif base.p in (1.0, math.inf):
        ball = lp_polygon(base.p)
    else:
        return None
    if M == LinearMap2.identity():
        return ball
    return ball.mapped(M)


def smooth_core(norm: NormSpec) -> tuple[LinearMap2, float]:
    """(M, p) with norm = M l^p, for norms that are not polygonal."""
    M, base = flatten(norm)
    if isinstance(base, Polygonal) or base.p in (1.0, math.inf):
        raise DomainError("norm has a polygonal unit ball")
    return M, base.p


def _lp_gauge(p: float, x: float, y: float) -> float:
    ax, ay = abs(x), abs(y)
    if p == 2.0:
        return math.hypot(ax, ay)
    if p == 1.0:
        return ax + ay
    m = max(ax, ay)
    if p == math.inf or m == 0.0:
        return m
    return m * ((ax / m) ** p + (ay / m) ** p) ** (1.0 / p)


def gauge(norm: NormSpec, v) -> float:
    """||v|| in the given norm."""
    x, y = float(v[0]), float(v[1])
    while isinstance(norm, LinearImage):
        T = norm.map
        d = T.det()
        x, y = (T.a22 * x - T.a12 * y) / d, (T.a11 * y - T.a21 * x) / d
        norm = norm.inner
    if isinstance(norm, Lp):
        return _lp_gauge(norm.p, x, y)
    best = 0.0
    for a in norm.ball.polar:
        s = a.x * x + a.y * y
        if s > best:
            best = s
    return best


def gauge_array(norm: NormSpec, pts: np.ndarray) -> np.ndarray:
    """Vectorized gauge over an ``(N, 2)`` array."""
    pts = np.asarray(pts, dtype=float)
    x, y = pts[:, 0], pts[:, 1]
    while isinstance(norm, LinearImage):
        T = norm.map
        d = T.det()
        x, y = (T.a22 * x - T.a12 * y) / d, (T.a11 * y - T.a21 * x) / d
        norm = norm.inner
    if isinstance(norm, Polygonal):
        A = np.array(norm.ball.polar)
        return np.maximum((A[:, :1] * x + A[:, 1:] * y).max(axis=0), 0.0)
    p = norm.p
    ax, ay = np.abs(x), np.abs(y)
    if p == 2.0:
        return np.hypot(ax, ay)
    if p == 1.0:
        return ax + ay
    m = np.maximum(ax, ay)
    if p == math.inf:
        return m
    safe = np.where(m == 0.0, 1.0, m)
    return np.where(m == 0.0, 0.0, m * ((ax / safe) ** p + (ay / safe) ** p) ** (1.0 / p))


def distance(norm: NormSpec, p, q) -> float:
    return gauge(norm, (p[0] - q[0], p[1] - q[1]))


def boundary_point(norm: NormSpec, theta: float) -> Point2:
    """The point of the unit circle in direction ``theta`` (radians)."""
    d = Point2(math.cos(theta), math.sin(theta))
    return d / gauge(norm, d)


def _polygon_support(ball: SymmetricPolygon, d: Point2) -> Point2:
    best, arg = -math.inf, None
    for v in ball.vertices:
        s = v.x * d.x + v.y * d.y
        if s > best:
            best, arg = s, v
    return arg


def support_point(norm: NormSpec, d) -> Point2:
    """A unit-ball point maximizing <d, w>.

    Polygon ties go to the lowest canonical vertex index.
    """
    d = as_point(d)
    if d.x == 0.0 and d.y == 0.0:
        raise ZeroDirection("support direction is the zero vector")
    if isinstance(norm, LinearImage):
        T = norm.map
        return T(support_point(norm.inner, T.transpose()(d)))
    if isinstance(norm, Polygonal):
        return _polygon_support(norm.ball, d)
    p = norm.p
    if p in (1.0, math.inf):
        return _polygon_support(lp_polygon(p), d)
    m = max(abs(d.x), abs(d.y))
    e = 1.0 / (p - 1.0)
    w = Point2(math.copysign((abs(d.x) / m) ** e, d.x), math.copysign((abs(d.y) / m) ** e, d.y))
    return w / _lp_gauge(p, w.x, w.y)


def pushforward(T: LinearMap2, norm: NormSpec) -> NormSpec:
    """The norm whose unit ball is T(B): ||v||_TX = ||T^-1 v||_X."""
    if not abs(T.det()) >= MIN_DET:
        raise SingularMap(f"|det| = {abs(T.det()):.3g} < {MIN_DET:g}")
    if isinstance(norm, Polygonal):
        return Polygonal(norm.ball.mapped(T))
    if isinstance(norm, LinearImage):
        return LinearImage(T @ norm.map, norm.inner)
    return LinearImage(T, norm)


def unit_circle_array(norm: NormSpec, thetas: np.ndarray) -> np.ndarray:
    """Vectorized :func:`boundary_point`."""
    d = np.column_stack([np.cos(thetas), np.sin(thetas)])
    return d / gauge_array(norm, d)[:, None]


def describe(norm: NormSpec) -> dict:
    """Plain-data form of a NormSpec (the CLI file schema)."""
    if isinstance(norm, Polygonal):
        return {"type": "polygon", "vertices": [[v.x, v.y] for v in norm.ball.vertices]}
    if isinstance(norm, Lp):
        return {"type": "lp", "p": "inf" if norm.p == math.inf else norm.p}
    return {"type": "linear_image", "matrix": norm.map.rows(), "inner": describe(norm.inner)}
