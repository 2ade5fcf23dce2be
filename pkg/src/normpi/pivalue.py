"""Self-circumference of unit circles and its certificates.

``pi_value(X)`` is half the X-length of the X-unit circle.  Polygonal balls
are measured exactly; smooth ones get a certified enclosure.  Two
constructive witnesses back the bounds 3 <= pi_value <= 4:

* an inscribed X-equilateral hexagon ``conv{u, v, v-u, -u, -v, u-v}``
  (perimeter 6, so the circle is at least as long);
* a circumscribed parallelogram spanned by two unit vectors of maximal
  cross product, which normalizes the ball into ``[-1, 1]^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .arclength import LengthInterval, boundary_length_bounds
from .errors import DomainError, NoConvergence, NoRoot, PreconditionError, SingularMap
from .geom import E1, E2, LinearMap2, Point2, as_point, extreme_points, symmetric_hull
from .norms import (
    Lp,
    NormSpec,
    Polygonal,
    as_polygon,
    boundary_point,
    gauge,
    pushforward,
    support_point,
    unit_circle_array,
)

EXACT = "exact-polygonal"
CERTIFIED = "certified"
BISECTION_STEPS = 80
ALTERNATION_CAP = 256
NORMALIZE_SAMPLES = 64


@dataclass(frozen=True)
class HexagonCertificate:
    u: Point2
    v: Point2
    side_gauges: tuple[float, ...]
    vertex_gauges: tuple[float, ...]

    @property
    def vertices(self) -> tuple[Point2, ...]:
        u, v = self.u, self.v
        return (u, v, v - u, -u, -v, u - v)

    @property
    def perimeter(self) -> float:
        return math.fsum(self.side_gauges)

    def is_valid(self, tol: float) -> bool:
        return all(abs(s - 1.0) <= tol for s in self.side_gauges) and all(
            g <= 1.0 + tol for g in self.vertex_gauges
        )


@dataclass(frozen=True)
class Normalization:
    """T with T(u) = e1, T(v) = e2 and T(B) inside the unit square."""

    T: LinearMap2
    u: Point2
    v: Point2

    def __iter__(self):
        return iter((self.T, self.u, self.v))

    def parallelogram(self) -> tuple[Point2, ...]:
        u, v = self.u, self.v
        return (u + v, v - u, -u - v, u - v)


@dataclass(frozen=True)
class PiReport:
    value: LengthInterval
    method: str
    hexagon: Optional[HexagonCertificate] = None
    parallelogram_map: Optional[LinearMap2] = None
    normalization: Optional[Normalization] = None
    classification: Optional[object] = None

    @property
    def lower(self) -> float:
        return self.value.lower

    @property
    def upper(self) -> float:
        return self.value.upper


def exact_pi(norm: NormSpec) -> float:
    ball = as_polygon(norm)
    if ball is None:
        raise DomainError("exact pi-value needs a polygonal unit ball")
    vs = ball.vertices
    n = len(vs)
    return 0.5 * math.fsum(gauge(norm, vs[(k + 1) % n] - vs[k]) for k in range(n))


def pi_value(norm: NormSpec, tol: float = 1e-6) -> PiReport:
    """pi-value of the norm: exact for polygonal balls, else an enclosure of
    width <= tol."""
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    ball = as_polygon(norm)
    if ball is not None:
        w = exact_pi(norm)
        return PiReport(LengthInterval(w, w, ball.n), EXACT)
    return PiReport(boundary_length_bounds(norm, norm, 2.0 * tol).scaled(0.5), CERTIFIED)


def make_xt(t: float) -> Polygonal:
    """The hexagonal norm conv{e1, t e1 + e2, e2 - e1, ...} with pi-value 3 + t."""
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    return Polygonal(symmetric_hull([(1.0, 0.0), (t, 1.0), (-1.0, 1.0)]))


def lp_pi_table(ps: Sequence[float], tol: float = 1e-6) -> list[tuple[float, float, float]]:
    rows = []
    for p in ps:
        r = pi_value(Lp(p), tol)
        rows.append((Lp(p).p, r.lower, r.upper))
    return rows


def _max_cross_pair(vertices) -> tuple[Point2, Point2]:
    best, pair = -1.0, None
    for i, a in enumerate(vertices):
        for b in vertices:
            c = abs(a.cross(b))
            # near-ties from rounding keep the earlier pair
            if c > best * (1.0 + 1e-12):
                best, pair = c, (a, b)
    return pair


def _alternate(norm: NormSpec, tol: float) -> tuple[Point2, Point2]:
    u = boundary_point(norm, 0.0)
    v = support_point(norm, u.rot90())
    c = u.cross(v)
    for _ in range(ALTERNATION_CAP):
        u_next = support_point(norm, v.rot270())
        gain = u_next.cross(v) - c
        if gain <= tol * c:
            return u, v
        u = u_next
        v = support_point(norm, u.rot90())
        c = u.cross(v)
    raise NoConvergence(f"cross-product alternation did not settle in {ALTERNATION_CAP} steps")


def circumscribe_normalize(norm: NormSpec, tol: float = 1e-9) -> Normalization:
    """Find unit vectors u, v of maximal |u x v| and T = [u v]^-1.

    Then ||e1||_TX = ||e2||_TX = 1 and ||(x, y)||_TX >= max(|x|, |y|).
    """
    ball = as_polygon(norm)
    if ball is not None:
        u, v = _max_cross_pair(ball.vertices)
    else:
        u, v = _alternate(norm, tol)
    if abs(u.cross(v)) < 1e-12:
        raise SingularMap("maximal cross product vanished")
    T = LinearMap2.from_columns(u, v).inverse()
    out = Normalization(T, u, v)
    _check_normalization(norm, out, tol)
    return out


def _check_normalization(norm: NormSpec, nz: Normalization, tol: float) -> None:
    TX = pushforward(nz.T, norm)
    for e in (E1, E2):
        g = gauge(TX, e)
        if abs(g - 1.0) > tol:
            raise NoConvergence(f"normalized gauge of {tuple(e)} is {g!r}")
    ball = as_polygon(TX)
    if ball is not None:
        pts = np.array(ball.vertices)
    else:
        pts = unit_circle_array(TX, np.linspace(0.0, 2 * math.pi, NORMALIZE_SAMPLES, endpoint=False))
    worst = float(np.abs(pts).max())
    if worst > 1.0 + tol:
        raise NoConvergence(f"normalized ball leaves the unit square (max coordinate {worst!r})")


def default_extreme_point(norm: NormSpec) -> Point2:
    """Lexicographically largest point of the unit ball (an extreme point)."""
    ball = as_polygon(norm)
    if ball is not None:
        return ball.vertices[0]
    # smooth balls are strictly convex: the x-maximizer is unique
    return support_point(norm, E1)


def inscribed_hexagon(norm: NormSpec, tol: float = 1e-9, u=None) -> HexagonCertificate:
    """X-equilateral hexagon conv{u, v, v-u, -u, -v, u-v} inscribed in the ball.

    ``v`` is the first unit vector counter-clockwise from ``u`` with
    ``||v - u|| = 1``, found by bisection on the boundary angle.
    """
    ball = as_polygon(norm)
    if u is None:
        u = default_extreme_point(norm)
    else:
        u = as_point(u)
        if abs(gauge(norm, u) - 1.0) > tol:
            raise PreconditionError(f"u = {tuple(u)} is not a unit vector")
        if ball is not None and u not in extreme_points(list(ball.vertices) + [u]):
            raise PreconditionError(f"u = {tuple(u)} is not an extreme point of the ball")
    a = u.angle()

    def g(theta: float) -> float:
        return gauge(norm, boundary_point(norm, theta) - u) - 1.0

    lo, hi = a, a + math.pi
    if not (g(lo) < 0.0 <= g(hi)):
        raise NoRoot("no sign change of ||w - u|| - 1 between u and -u")
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return _certificate(norm, u, boundary_point(norm, hi))


def _certificate(norm: NormSpec, u: Point2, v: Point2) -> HexagonCertificate:
    vs = (u, v, v - u, -u, -v, u - v)
    sides = tuple(gauge(norm, vs[(k + 1) % 6] - vs[k]) for k in range(6))
    return HexagonCertificate(u, v, sides, tuple(gauge(norm, w) for w in vs))


def pi_certificates(norm: NormSpec, tol: float = 1e-6) -> PiReport:
    """pi_value together with both certificates and (for polygons) the
    extremal classification."""
    from .classify import classify_extremal

    report = pi_value(norm, tol)
    hexagon = inscribed_hexagon(norm, min(tol, 1e-6))
    nz = circumscribe_normalize(norm, min(tol, 1e-9))
    ball = as_polygon(norm)
    tag = classify_extremal(ball, 1e-9) if ball is not None else None
    return PiReport(report.value, report.method, hexagon, nz.T, nz, tag)
