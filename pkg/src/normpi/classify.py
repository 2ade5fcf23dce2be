"""Extremal shapes, quarter-turn symmetry and Euclidean tests."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .arclength import LengthInterval
from .errors import PreconditionError
from .geom import E1, E2, LinearMap2, Point2, SymmetricPolygon, as_point
from .norms import (
    Lp,
    NormSpec,
    as_polygon,
    boundary_point,
    distance,
    flatten,
    gauge,
    unit_circle_array,
    gauge_array,
)
from .pivalue import pi_value


@dataclass(frozen=True)
class Parallelogram:
    u: Point2
    v: Point2
    name = "parallelogram"


@dataclass(frozen=True)
class LinearlyRegularHexagon:
    u: Point2
    v: Point2
    name = "linearly-regular-hexagon"


@dataclass(frozen=True)
class Generic:
    name = "generic"


ExtremalTag = Union[Parallelogram, LinearlyRegularHexagon, Generic]


@dataclass(frozen=True)
class QuarterTurnBasis:
    S: LinearMap2
    shift: int


def classify_extremal(ball: SymmetricPolygon, tol: float = 1e-9):
    """Parallelogram (pi = 4), linearly regular hexagon (pi = 3) or generic."""
    vs = ball.vertices
    n = len(vs)
    if n == 4:
        return Parallelogram(vs[0], vs[1])
    if n == 6:
        slack = tol * ball.scale
        if all((vs[k - 1] + vs[(k + 1) % 6] - vs[k]).norm2() <= slack for k in range(6)):
            return LinearlyRegularHexagon(vs[0], vs[1])
    return Generic()


def quarter_turn_basis(ball: SymmetricPolygon, tol: float = 1e-9) -> Optional[QuarterTurnBasis]:
    """An order-4 linear map S (S^2 = -I) with S(ball) = ball, if one exists.

    Such an S permutes the vertex cycle by a constant shift m; since S^2 = -I
    is the half turn (shift n/2), m is n/4 or 3n/4.  Both are tried, with S
    solved from vertex 0 and the vertex making the largest cross product
    with it (a well-conditioned pair).
    """
    vs = ball.vertices
    n = len(vs)
    if n % 4:
        return None
    j = max(range(1, n // 2), key=lambda k: abs(vs[0].cross(vs[k])))
    Vinv = LinearMap2.from_columns(vs[0], vs[j]).inverse()
    slack = tol * ball.scale
    for m in (n // 4, 3 * n // 4):
        S = LinearMap2.from_columns(vs[m], vs[(j + m) % n]) @ Vinv
        if max((S(vs[k]) - vs[(k + m) % n]).norm2() for k in range(n)) > slack:
            continue
        if (S @ S + LinearMap2.identity()).max_abs() > tol:
            continue
        return QuarterTurnBasis(S, m)
    return None


def quarter_turn_map(norm: NormSpec, tol: float = 1e-9) -> Optional[LinearMap2]:
    """Order-4 symmetry of a norm: exact for polygons, structural otherwise."""
    ball = as_polygon(norm)
    if ball is not None:
        q = quarter_turn_basis(ball, tol)
        return None if q is None else q.S
    M, _ = flatten(norm)
    # smooth bodies here are always M l^p, which is fixed by M rot90 M^-1
    return M @ LinearMap2.rot90() @ M.inverse()


def _is_i_symmetric(norm: NormSpec, tol: float = 1e-9) -> bool:
    if isinstance(norm, Lp):
        return True
    S = quarter_turn_map(norm, tol)
    if S is None:
        return False
    R = LinearMap2.rot90()
    return (S + LinearMap2.scale(-1.0) @ R).max_abs() <= tol or (S + R).max_abs() <= tol


def euclidean_test(norm: NormSpec, tol: float = 1e-9, trials: int = 64,
                   seed: int = 0) -> tuple[bool, float]:
    """Parallelogram-law residual over fixed probes and seeded random pairs of
    unit vectors."""
    if trials < 1:
        raise ValueError("trials must be >= 1")

    def residual(u, v) -> float:
        a, b = gauge(norm, u), gauge(norm, v)
        c, d = gauge(norm, u + v), gauge(norm, u - v)
        return abs(2 * a * a + 2 * b * b - c * c - d * d)

    worst = max(residual(E1, E2), residual(E1, E1 + E2))
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        t1, t2 = rng.uniform(0.0, 2 * math.pi, size=2)
        worst = max(worst, residual(boundary_point(norm, t1), boundary_point(norm, t2)))
    return worst <= tol, worst


def tangent_defect(norm: NormSpec, n_samples: int = 256, t_range: float = 1.0,
                   t_steps: int = 100) -> float:
    """Deepest penetration of the perpendicular lines v + span(iv), v on the
    unit circle, into the open unit ball.

    Zero exactly characterizes multiples of l^2.  The grid skips t = 0, which
    only returns v itself.
    """
    if n_samples < 8:
        raise ValueError("n_samples must be >= 8")
    thetas = 2 * math.pi * np.arange(n_samples) / n_samples
    v = unit_circle_array(norm, thetas)
    iv = np.column_stack([-v[:, 1], v[:, 0]])
    ts = t_range * np.arange(1, t_steps + 1) / t_steps
    ts = np.concatenate([-ts[::-1], ts])
    pts = (v[:, None, :] + ts[None, :, None] * iv[:, None, :]).reshape(-1, 2)
    g = gauge_array(norm, pts)
    return float(max(0.0, (1.0 - g).max()))


def angle_length_margin(norm: NormSpec, v, p, q) -> float:
    """d(p, q) - angle(p, q) * ||v|| for p, q on the line through v
    perpendicular to v.  Positive for every quarter-turn-invariant norm."""
    v, p, q = as_point(v), as_point(p), as_point(q)
    if v == (0.0, 0.0):
        raise PreconditionError("v must be nonzero")
    if not _is_i_symmetric(norm):
        raise PreconditionError("norm is not invariant under the quarter turn")
    h = v.norm2()
    for w in (p, q):
        off = abs((w - v).dot(v))
        if off > 1e-9 * h * max(h, (w - v).norm2()):
            raise PreconditionError(f"{tuple(w)} is not on the line through v perpendicular to v")
    if p == q:
        raise PreconditionError("p and q must be distinct")
    theta = math.atan2(abs(p.cross(q)), p.dot(q))
    return distance(norm, p, q) - theta * gauge(norm, v)


def quarter_turn_pi_check(norm: NormSpec, tol: float = 1e-6) -> tuple[LengthInterval, bool]:
    """pi-value of a quarter-turn-invariant norm and whether it clears pi."""
    if not _is_i_symmetric(norm):
        raise PreconditionError("norm is not invariant under the quarter turn")
    pi = pi_value(norm, tol).value
    return pi, pi.lower >= math.pi - tol - pi.width
