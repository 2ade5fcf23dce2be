"""Planar primitives: points, 2x2 maps, canonical centrally symmetric polygons.

Coordinates are plain 64-bit floats.  A :class:`SymmetricPolygon` is always
stored in canonical form: counter-clockwise, strictly convex, starting at the
lexicographically largest vertex, with the second half of the vertex list
equal to the exact negation of the first half.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import DegenerateBody, SingularMap, ZeroDirection

DEDUPE_DIST = 1e-12
COLLINEAR_REL = 1e-12
MIN_DET = 1e-12


class Point2(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Point2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point2(self.x - other[0], self.y - other[1])

    def __neg__(self):
        # + 0.0 keeps negated zeros positive so mirrored halves hash and print cleanly
        return Point2(-self.x + 0.0, -self.y + 0.0)

    def __mul__(self, c):  # type: ignore[override]
        return Point2(self.x * c, self.y * c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return Point2(self.x / c, self.y / c)

    def dot(self, other) -> float:
        return self.x * other[0] + self.y * other[1]

    def cross(self, other) -> float:
        return self.x * other[1] - self.y * other[0]

    def rot90(self) -> "Point2":
        """Counter-clockwise quarter turn (multiplication by i)."""
        return Point2(-self.y + 0.0, self.x)

    def rot270(self) -> "Point2":
        return Point2(self.y, -self.x + 0.0)

    def norm2(self) -> float:
        return math.hypot(self.x, self.y)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)


E1 = Point2(1.0, 0.0)
E2 = Point2(0.0, 1.0)
ORIGIN = Point2(0.0, 0.0)


def as_point(p) -> Point2:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"non-finite coordinate in {p!r}")
    return Point2(x, y)


def cross3(o, a, b) -> float:
    """Cross product of (a - o) and (b - o); positive for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class LinearMap2:
    """Row-major 2x2 matrix ``[[a11, a12], [a21, a22]]``."""

    a11: float
    a12: float
    a21: float
    a22: float

    @classmethod
    def identity(cls) -> "LinearMap2":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def rot90(cls) -> "LinearMap2":
        return cls(0.0, -1.0, 1.0, 0.0)

    @classmethod
    def scale(cls, c: float) -> "LinearMap2":
        return cls(c, 0.0, 0.0, c)

    @classmethod
    def from_columns(cls, u, v) -> "LinearMap2":
        return cls(u[0], v[0], u[1], v[1])

    @classmethod
    def from_rows(cls, rows) -> "LinearMap2":
        (a, b), (c, d) = rows
        return cls(float(a), float(b), float(c), float(d))

    def rows(self) -> list[list[float]]:
        return [[self.a11, self.a12], [self.a21, self.a22]]

    def __call__(self, p) -> Point2:
        return Point2(self.a11 * p[0] + self.a12 * p[1], self.a21 * p[0] + self.a22 * p[1])

    apply = __call__

    def __matmul__(self, other: "LinearMap2") -> "LinearMap2":
        return LinearMap2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def __add__(self, other: "LinearMap2") -> "LinearMap2":
        return LinearMap2(self.a11 + other.a11, self.a12 + other.a12,
                          self.a21 + other.a21, self.a22 + other.a22)

    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21

    def transpose(self) -> "LinearMap2":
        return LinearMap2(self.a11, self.a21, self.a12, self.a22)

    def inverse(self) -> "LinearMap2":
        d = self.det()
        if not abs(d) >= MIN_DET:
            raise SingularMap(f"|det| = {abs(d):.3g} < {MIN_DET:g}")
        return LinearMap2(self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d)

    def max_abs(self) -> float:
        return max(abs(self.a11), abs(self.a12), abs(self.a21), abs(self.a22))

    def singular_values(self) -> tuple[float, float]:
        # closed form for 2x2: s1 +- s2 = |(a+d, c-b)|, |(a-d, c+b)|
        q = math.hypot(self.a11 + self.a22, self.a21 - self.a12)
        r = math.hypot(self.a11 - self.a22, self.a21 + self.a12)
        return (q + r) / 2.0, abs(q - r) / 2.0

    def cond(self) -> float:
        smax, smin = self.singular_values()
        return math.inf if smin == 0.0 else smax / smin


def convex_hull(points: Iterable, collinear_tol: float = 0.0) -> list[Point2]:
    """Monotone-chain hull, counter-clockwise from the lexicographic minimum.

    Collinear boundary points never appear in the output.  Vertices whose turn
    is ``<= collinear_tol`` are removed afterwards, flattest first; applying
    the tolerance inside the chain would misjudge near-vertical neighbours.
    """
    pts = sorted(set(as_point(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list[Point2] = []
    for p in pts:
        while len(lower) >= 2 and cross3(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper: list[Point2] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross3(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    while collinear_tol > 0.0 and len(hull) >= 3:
        n = len(hull)
        turns = [cross3(hull[k - 1], hull[k], hull[(k + 1) % n]) for k in range(n)]
        k = min(range(n), key=turns.__getitem__)
        if turns[k] > collinear_tol:
            break
        if n == 3:
            # flat triangle: keep the segment's two ends
            return max(([a, b] for a in hull for b in hull), key=lambda ab: (ab[1] - ab[0]).norm2())
        del hull[k]
    return hull


def _scale_of(points: Sequence) -> float:
    return max((max(abs(p[0]), abs(p[1])) for p in points), default=0.0)


def _start_at_lexmax(cycle: list[Point2]) -> list[Point2]:
    k = max(range(len(cycle)), key=lambda i: cycle[i])
    return cycle[k:] + cycle[:k]


def extreme_points(points: Iterable) -> list[Point2]:
    """Extreme points of conv(points), counter-clockwise from the lexicographic max.

    Collinear points on hull edges are not extreme and are removed.  Degenerate
    inputs yield one or two points.
    """
    pts = [as_point(p) for p in points]
    scale = _scale_of(pts)
    hull = convex_hull(pts, COLLINEAR_REL * scale * scale)
    if len(hull) <= 2:
        return sorted(hull, reverse=True)
    return _start_at_lexmax(hull)


@dataclass(frozen=True)
class SymmetricPolygon:
    """A canonical origin-symmetric convex polygon (the unit ball of a norm).

    Build instances with :func:`symmetric_hull`; the constructor only
    validates.
    """

    vertices: tuple[Point2, ...]

    def __post_init__(self):
        vs = tuple(as_point(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        n = len(vs)
        if n < 4 or n % 2:
            raise DegenerateBody(f"need an even vertex count >= 4, got {n}")
        h = n // 2
        for k in range(h):
            if vs[k + h] != -vs[k]:
                raise ValueError("vertex list is not centrally symmetric")
        for k in range(n):
            if cross3(vs[k - 1], vs[k], vs[(k + 1) % n]) <= 0.0:
                raise ValueError("vertex cycle is not strictly convex")

    def __len__(self):
        return len(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def scale(self) -> float:
        return _scale_of(self.vertices)

    @cached_property
    def polar(self) -> tuple[Point2, ...]:
        """Edge normals scaled so that ``polar[k] . x == 1`` on edge k."""
        vs = self.vertices
        n = len(vs)
        out = []
        for k in range(n):
            a, b = vs[k], vs[(k + 1) % n]
            c = a.cross(b)
            out.append(Point2((b.y - a.y) / c, (a.x - b.x) / c))
        return tuple(out)

    def edges(self) -> list[tuple[Point2, Point2]]:
        vs = self.vertices
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    def mapped(self, T: LinearMap2) -> "SymmetricPolygon":
        return symmetric_hull([T(v) for v in self.vertices])

    def area(self) -> float:
        vs = self.vertices
        return 0.5 * math.fsum(vs[k - 1].cross(vs[k]) for k in range(len(vs)))


def _symmetric_cleanup(cycle: list[Point2]) -> list[Point2]:
    """Drop near-duplicate and near-collinear vertices in antipodal pairs."""
    scale = _scale_of(cycle)
    tol = COLLINEAR_REL * scale * scale
    changed = True
    while changed and len(cycle) >= 4:
        changed = False
        n = len(cycle)
        h = n // 2
        for k in range(h):
            prev, cur, nxt = cycle[k - 1], cycle[k], cycle[(k + 1) % n]
            if (cur - prev).norm2() < DEDUPE_DIST or cross3(prev, cur, nxt) < tol:
                del cycle[k + h]
                del cycle[k]
                changed = True
                break
    return cycle


def symmetric_hull(points: Iterable) -> SymmetricPolygon:
    """Canonical convex hull of ``points`` together with their negations.

    Raises DegenerateBody if the hull has empty interior (for instance when
    every point lies on one line through the origin).
    """
    pts = [as_point(p) for p in points]
    cloud = set(pts)
    cloud.update(-p for p in pts)
    hull = convex_hull(cloud)
    if len(hull) < 3:
        raise DegenerateBody("points span a line through the origin (or less)")
    hull = _start_at_lexmax(hull)
    # -hull[0] is the lexicographic minimum, which monotone chain always keeps
    try:
        h = hull.index(-hull[0])
    except ValueError:  # pragma: no cover - guarded by construction
        raise DegenerateBody("hull lost its antipodal vertex")
    half = hull[:h]
    cycle = _symmetric_cleanup(half + [-p for p in half])
    if len(cycle) < 4:
        raise DegenerateBody("hull has zero area")
    cycle = _start_at_lexmax(cycle)
    h = len(cycle) // 2
    half = cycle[:h]
    try:
        return SymmetricPolygon(tuple(half + [-p for p in half]))
    except ValueError as exc:
        raise DegenerateBody(str(exc)) from None


def ray_exit(poly: SymmetricPolygon, d) -> tuple[float, int]:
    """Largest t with t*d in poly, and the index of the edge hit.

    A ray through a vertex reports the incident edge of lower index.
    """
    d = as_point(d)
    if d.x == 0.0 and d.y == 0.0:
        raise ZeroDirection("ray direction is the zero vector")
    best, idx = -math.inf, -1
    for k, a in enumerate(poly.polar):
        s = a.x * d.x + a.y * d.y
        if s > best:
            best, idx = s, k
    return 1.0 / best, idx
