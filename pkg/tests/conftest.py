import math

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from normpi import LinearMap2, symmetric_hull
from normpi.errors import DegenerateBody

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile(
    "stress", max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# mpmath tanh-sinh quadrature of the superellipse parametrization at 50
# digits, with s = u^2 to remove the endpoint singularity
L3_PI = 3.25976799305899509713550750411
L4_PI = 3.39693482362845842121398187769

coord = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False, allow_infinity=False, allow_subnormal=False)
point = st.tuples(coord, coord)
angle = st.floats(min_value=0.0, max_value=2 * math.pi, allow_nan=False)


@st.composite
def polygons(draw, min_points=2, max_points=10, max_aspect=1e4):
    """Symmetric polygons with circumradius / inradius <= max_aspect; the
    gauge of a sliver is conditioned like its aspect ratio."""
    pts = draw(st.lists(point, min_size=min_points, max_size=max_points))
    try:
        P = symmetric_hull(pts)
    except DegenerateBody:
        assume(False)
    outer = max(math.hypot(*v) for v in P.vertices)
    inv_inner = max(math.hypot(*a) for a in P.polar)
    assume(outer * inv_inner <= max_aspect)
    return P


@st.composite
def linear_maps(draw, cond_max=100.0):
    a, b = draw(angle), draw(angle)
    c = draw(st.floats(min_value=1.0, max_value=cond_max))
    s = draw(st.floats(min_value=0.3, max_value=3.0))
    flip = draw(st.sampled_from([1.0, -1.0]))

    def rot(t):
        return LinearMap2(math.cos(t), -math.sin(t), math.sin(t), math.cos(t))

    return rot(a) @ LinearMap2(s * math.sqrt(c), 0.0, 0.0, flip * s / math.sqrt(c)) @ rot(b)


@pytest.fixture
def square():
    return symmetric_hull([(1.0, 1.0), (-1.0, 1.0)])


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(n, ok, detail)``."""

    def record(n: int, ok: bool, detail: str) -> bool:
        ACCEPTANCE[n] = (bool(ok), detail)
        print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
