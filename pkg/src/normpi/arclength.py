"""Lengths of polygonal and convex curves measured in a norm.

Polylines are measured exactly (sum of successive distances).  Boundary arcs
of smooth bodies get a two-sided enclosure: an inscribed polyline through
sampled boundary points gives the lower end, and the chain of intersections
of consecutive support lines (a circumscribed convex path) gives the upper
end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyArc, NoConvergence
from .geom import LinearMap2, Point2, SymmetricPolygon, as_point
from .norms import NormSpec, as_polygon, boundary_point, distance, gauge_array, smooth_core

N_START = 64
N_MAX = 2 ** 20
MAX_LOCAL_REFINE = 48
FAR_INTERSECTION = 1e8
# relative allowance for rounding in the gauges (sums themselves are exact)
ROUNDING_SLACK = 1e-13
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PolylinePath:
    points: tuple[Point2, ...]

    def __init__(self, points: Iterable):
        pts = tuple(as_point(p) for p in points)
        if len(pts) < 2:
            raise ValueError("a polyline needs at least two points")
        object.__setattr__(self, "points", pts)

    @classmethod
    def closed_loop(cls, vertices: Sequence) -> "PolylinePath":
        vs = list(vertices)
        return cls(vs + vs[:1])

    @property
    def closed(self) -> bool:
        return self.points[0] == self.points[-1]


@dataclass(frozen=True)
class LengthInterval:
    lower: float
    upper: float
    refinements: int = 0

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def mid(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= x <= self.upper + slack

    def scaled(self, c: float) -> "LengthInterval":
        return LengthInterval(self.lower * c, self.upper * c, self.refinements)


def polyline_length(norm: NormSpec, path) -> float:
    """Exact X-length of the polygonal path: the sum of successive distances."""
    pts = path.points if isinstance(path, PolylinePath) else [as_point(p) for p in path]
    return math.fsum(distance(norm, pts[i + 1], pts[i]) for i in range(len(pts) - 1))


def _polygon_arc_points(ball: SymmetricPolygon, body: NormSpec, t0: float, sweep: float):
    vs = ball.vertices
    inside = []
    for v in vs:
        r = (math.atan2(v.y, v.x) - t0) % TWO_PI
        if 0.0 < r < sweep:
            inside.append((r, v))
    inside.sort()
    return [boundary_point(body, t0)] + [v for _, v in inside] + [boundary_point(body, t0 + sweep)]


def _lp_unit_points(p: float, phis: np.ndarray) -> np.ndarray:
    """Superellipse parametrization of the l^p circle (plain angle when p = 2)."""
    c, s = np.cos(phis), np.sin(phis)
    e = 2.0 / p
    return np.column_stack([np.sign(c) * np.abs(c) ** e, np.sign(s) * np.abs(s) ** e])


def _lp_param(p: float, direction) -> float:
    """Inverse of :func:`_lp_unit_points` for the boundary point along ``direction``."""
    x, y = direction
    h = p / 2.0
    return math.atan2(math.copysign(abs(y) ** h, y), math.copysign(abs(x) ** h, x))


def _lp_normals(p: float, y: np.ndarray) -> np.ndarray:
    a = np.abs(y)
    m = a.max(axis=1, keepdims=True)
    return np.sign(y) * (a / m) ** (p - 1.0)


def _tangent_chain(p: float, phis: np.ndarray, full: bool):
    """Sample the l^p circle at ``phis`` (increasing) and intersect tangents.

    Returns (points, apexes, ok) where apexes[i] is the circumscribed vertex
    between points i and i+1 (NaN when the two support lines coincide and the
    chord itself is the boundary), and ok flags gaps needing refinement.
    """
    y = _lp_unit_points(p, phis)
    if full:
        y[-1] = y[0]
    nrm = _lp_normals(p, y)
    n0, n1 = nrm[:-1], nrm[1:]
    y0, y1 = y[:-1], y[1:]
    turn = n0[:, 0] * n1[:, 1] - n0[:, 1] * n1[:, 0]
    tau = np.column_stack([-n0[:, 1], n0[:, 0]])
    num = np.einsum("ij,ij->i", n1, y1 - y0)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = num / turn
    apex = y0 + s[:, None] * tau
    ok = (turn > 0.0) & np.isfinite(s) & (s >= 0.0) & (s <= FAR_INTERSECTION)
    # coincident support lines: the arc between is a segment of that line
    chord = (turn <= 0.0) & (np.abs(np.einsum("ij,ij->i", n0, y1 - y0)) <= 1e-15) & (
        np.abs(num) <= 1e-15
    )
    apex[chord] = np.nan
    return y, apex, ok | chord


def _refined_phis(p: float, phis: np.ndarray, full: bool):
    for _ in range(MAX_LOCAL_REFINE):
        y, apex, ok = _tangent_chain(p, phis, full)
        if ok.all():
            return y, apex, phis
        if len(phis) > 2 * N_MAX:
            break
        bad = np.flatnonzero(~ok)
        mids = 0.5 * (phis[bad] + phis[bad + 1])
        phis = np.insert(phis, bad + 1, mids)
    raise NoConvergence("support lines stayed near-parallel after local refinement")


def _smooth_arc(measure: NormSpec, M: LinearMap2, p: float, a: float, sweep: float,
                n: int) -> tuple[float, float, int]:
    full = sweep >= TWO_PI
    phis = a + sweep * (np.arange(n + 1) / n)
    y, apex, phis = _refined_phis(p, phis, full)
    Mm = np.array([[M.a11, M.a12], [M.a21, M.a22]])
    chords = (y[1:] - y[:-1]) @ Mm.T
    lower = math.fsum(gauge_array(measure, chords).tolist())
    straight = np.isnan(apex[:, 0])
    ap = np.where(straight[:, None], y[:-1], apex)
    legs_a = (ap - y[:-1]) @ Mm.T
    legs_b = (y[1:] - ap) @ Mm.T
    upper = math.fsum(gauge_array(measure, legs_a).tolist()) + math.fsum(
        gauge_array(measure, legs_b).tolist()
    )
    m = len(phis) - 1
    lower *= 1.0 - ROUNDING_SLACK
    upper *= 1.0 + ROUNDING_SLACK
    return lower, max(upper, lower), m


def _inner_sweep(M: LinearMap2, p: float, t0: float, sweep: float) -> tuple[float, float]:
    """Translate an output-space arc (t0, t0 + sweep) into a CCW parameter arc
    of the inner l^p circle."""
    if sweep >= TWO_PI:
        return 0.0, TWO_PI
    Minv = M.inverse()
    a = _lp_param(p, Minv((math.cos(t0), math.sin(t0))))
    b = _lp_param(p, Minv((math.cos(t0 + sweep), math.sin(t0 + sweep))))
    if M.det() < 0.0:
        a, b = b, a
    d = (b - a) % TWO_PI
    if d == 0.0:
        d = TWO_PI if sweep > math.pi else 0.0
    return a, d


def _arc_bounds(measure: NormSpec, body: NormSpec, t0: float, sweep: float,
                tol: float) -> LengthInterval:
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    ball = as_polygon(body)
    if ball is not None:
        if sweep >= TWO_PI:
            pts = list(ball.vertices) + [ball.vertices[0]]
        else:
            pts = _polygon_arc_points(ball, body, t0, sweep)
        exact = polyline_length(measure, pts)
        return LengthInterval(exact, exact, len(pts) - 1)
    M, p = smooth_core(body)
    a, d = _inner_sweep(M, p, t0, sweep)
    if d == 0.0:
        return LengthInterval(0.0, 0.0, 0)
    n = N_START
    while n <= N_MAX:
        lower, upper, m = _smooth_arc(measure, M, p, a, d, n)
        if upper - lower <= tol:
            return LengthInterval(lower, upper, m)
        n *= 2
    raise NoConvergence(f"width {upper - lower:.3g} > tol {tol:.3g} at n = {N_MAX}")


def boundary_length_bounds(measure: NormSpec, body: NormSpec, tol: float) -> LengthInterval:
    """Certified enclosure of the measure-length of the body's unit circle.

    Polygonal bodies (including l^1, l^inf and their linear images) are
    measured exactly and return a degenerate interval.
    """
    return _arc_bounds(measure, body, 0.0, TWO_PI, tol)


def arc_length_bounds(measure: NormSpec, body: NormSpec, theta_start: float,
                      theta_end: float, tol: float) -> LengthInterval:
    """Enclosure of the length of the counter-clockwise boundary arc of ``body``
    between the directions ``theta_start`` and ``theta_end``."""
    sweep = theta_end - theta_start
    if not sweep > 0.0:
        raise EmptyArc(f"theta_end ({theta_end}) must exceed theta_start ({theta_start})")
    if sweep > TWO_PI * (1 + 1e-15):
        raise ValueError("an arc sweeps at most 2*pi")
    return _arc_bounds(measure, body, theta_start, min(sweep, TWO_PI), tol)
