"""Acceptance criteria 1-13, each at its stated tolerance.

Every test records one PASS/FAIL line, repeated in the terminal summary.
Random maps use condition number <= 1e3 throughout.
"""

import math
import time

import numpy as np
import pytest

from normpi.classify import (
    Generic,
    LinearlyRegularHexagon,
    Parallelogram,
    angle_length_margin,
    classify_extremal,
    euclidean_test,
    quarter_turn_basis,
    tangent_defect,
)
from normpi.geom import E1, E2, LinearMap2, Point2
from normpi.norms import LinearImage, Lp, Polygonal, gauge, pushforward
from normpi.pivalue import (
    EXACT,
    circumscribe_normalize,
    inscribed_hexagon,
    make_xt,
    pi_value,
)
from normpi.verify import (
    random_linear_map,
    random_quarter_polygon,
    random_symmetric_polygon,
    regular_hexagon_image,
    replay,
    run_suite,
    trial_seed,
)

COND = 1e3
CORPUS = [random_symmetric_polygon(1000 + i, 2 + i % 11) for i in range(200)]


def test_criterion_01_corner_norms(criterion):
    r1, rinf = pi_value(Lp(1)), pi_value(Lp(math.inf))
    err = max(abs(r.lower - 4) + abs(r.upper - 4) for r in (r1, rinf))
    ok = err <= 1e-12 and r1.method == rinf.method == EXACT
    assert criterion(1, ok, f"l1 = {r1.lower!r}, linf = {rinf.lower!r}, method {r1.method}")


def test_criterion_02_euclidean_pi(criterion):
    t0 = time.perf_counter()
    r = pi_value(Lp(2), 1e-6)
    elapsed = time.perf_counter() - t0
    ok = r.upper - r.lower <= 1e-6 and r.lower <= math.pi <= r.upper and elapsed < 5.0
    assert criterion(2, ok, f"[{r.lower!r}, {r.upper!r}] width {r.upper - r.lower:.2e} in {elapsed:.3f}s")


def test_criterion_03_xt_family(criterion):
    errs = [abs(pi_value(make_xt(k / 10)).lower - (3 + k / 10)) for k in range(11)]
    assert criterion(3, max(errs) <= 1e-12, f"max |pi(X_t) - (3 + t)| = {max(errs):.1e}")


def test_criterion_04_golab_bounds(criterion):
    report = run_suite(7, 1000, 1e-9)
    golab = [v for v in report.violations if v.check == "pivalue.golab"]
    ok = not golab
    assert criterion(4, ok, f"1000 trials, {len(golab)} bound violations "
                            f"({len(report.violations)} violations of any check)")
    assert report.violations == []


def test_criterion_05_linear_invariance(criterion):
    worst = 0.0
    for i in range(200):
        X = Polygonal(random_symmetric_polygon(5000 + i, 2 + i % 11))
        T = random_linear_map(6000 + i, COND)
        worst = max(worst, abs(pi_value(pushforward(T, X)).lower - pi_value(X).lower))
    assert criterion(5, worst <= 1e-8, f"200 pairs, max |pi(TX) - pi(X)| = {worst:.1e}")


def test_criterion_06_hexagon_certificates(criterion):
    side_p = vert_p = 0.0
    for P in CORPUS:
        h = inscribed_hexagon(Polygonal(P), 1e-9)
        side_p = max(side_p, max(abs(s - 1) for s in h.side_gauges))
        vert_p = max(vert_p, max(h.vertex_gauges) - 1)
    side_s = vert_s = 0.0
    for p in (1.5, 2.0, 3.0):
        h = inscribed_hexagon(Lp(p), 1e-9)
        side_s = max(side_s, max(abs(s - 1) for s in h.side_gauges))
        vert_s = max(vert_s, max(h.vertex_gauges) - 1)
    ok = side_p <= 1e-8 and vert_p <= 1e-8 and side_s <= 1e-6 and vert_s <= 1e-6
    assert criterion(6, ok, f"side error polygons {side_p:.1e}, l^p {side_s:.1e}; "
                            f"vertex excess {max(vert_p, vert_s):.1e}")


def test_criterion_07_normalization(criterion):
    box = gauge_err = 0.0
    for P in CORPUS:
        X = Polygonal(P)
        T, _, _ = circumscribe_normalize(X, 1e-9)
        TX = pushforward(T, X)
        box = max(box, max(max(abs(w.x), abs(w.y)) for w in TX.ball.vertices) - 1)
        gauge_err = max(gauge_err, abs(gauge(TX, E1) - 1), abs(gauge(TX, E2) - 1))
    ok = box <= 1e-9 and gauge_err <= 1e-9
    assert criterion(7, ok, f"box excess {box:.1e}, unit-gauge error {gauge_err:.1e}")


def test_criterion_08_classification(criterion):
    bad, err4, err3 = 0, 0.0, 0.0
    for i in range(50):
        P = random_symmetric_polygon(7000 + i, 2)
        bad += not isinstance(classify_extremal(P, 1e-9), Parallelogram)
        err4 = max(err4, abs(pi_value(Polygonal(P)).lower - 4))
        H = regular_hexagon_image(random_linear_map(7100 + i, COND))
        bad += not isinstance(classify_extremal(H, 1e-9), LinearlyRegularHexagon)
        err3 = max(err3, abs(pi_value(Polygonal(H)).lower - 3))
    generic = isinstance(classify_extremal(make_xt(0.5).ball, 1e-9), Generic)
    ok = bad == 0 and err4 <= 1e-9 and err3 <= 1e-9 and generic
    assert criterion(8, ok, f"{bad} mis-tagged, |pi - 4| <= {err4:.1e}, |pi - 3| <= {err3:.1e}, "
                            f"X_0.5 generic: {generic}")


def test_criterion_09_quarter_turn(criterion):
    lp_min = min(pi_value(Lp(p), 1e-6).lower - math.pi
                 for p in (1, 1.25, 1.5, 2, 3, 4, math.inf))
    q_min = math.inf
    s_err, missing = 0.0, 0
    for i in range(100):
        Q = random_quarter_polygon(8000 + i, 2 + i % 7)
        q_min = min(q_min, pi_value(Polygonal(Q)).lower - math.pi)
        q = quarter_turn_basis(Q.mapped(random_linear_map(8100 + i, COND)), 1e-9)
        if q is None:
            missing += 1
        else:
            s_err = max(s_err, (q.S @ q.S + LinearMap2.identity()).max_abs())
    ok = lp_min >= -1e-6 and q_min >= -1e-9 and missing == 0 and s_err <= 1e-9
    assert criterion(9, ok, f"min l^p lower - pi = {lp_min:.2e}, min polygon pi - pi = {q_min:.2e}, "
                            f"S found {100 - missing}/100 with |S^2 + I| <= {s_err:.1e}")


def test_criterion_10_euclidean(criterion):
    failures, pi_err = 0, 0.0
    for i in range(50):
        E = LinearImage(random_linear_map(9000 + i, COND), Lp(2))
        failures += not euclidean_test(E, 1e-9)[0]
        pi_err = max(pi_err, abs(pi_value(E, 1e-6).value.mid - math.pi))
    X4 = Lp(4)
    probe = abs(2 * gauge(X4, E1) ** 2 + 2 * gauge(X4, E2) ** 2
                - gauge(X4, E1 + E2) ** 2 - gauge(X4, E1 - E2) ** 2)
    l4_flag = euclidean_test(X4, 1e-9)[0]
    poly_true = sum(euclidean_test(Polygonal(P), 1e-9)[0] for P in CORPUS)
    ok = failures == 0 and pi_err <= 2e-6 and not l4_flag and probe >= 1.17 and poly_true == 0
    assert criterion(10, ok, f"ellipses rejected {failures}, |pi(E) - pi| <= {pi_err:.1e}, "
                             f"l4 probe residual {probe:.4f}, polygons passing {poly_true}")


def test_criterion_11_tangent(criterion):
    d2 = tangent_defect(Lp(2), 256)
    dinf = tangent_defect(Lp(math.inf), 256)
    v = Point2(1.0, 0.5)
    witness = max(1 - gauge(Lp(math.inf), v + v.rot90() * t) for t in np.linspace(-1, 1, 601))
    poly_min = min(tangent_defect(Polygonal(P), 256) for P in CORPUS)
    ok = d2 == 0.0 and dinf >= 0.05 and witness >= 0.05 and poly_min > 0
    assert criterion(11, ok, f"l2 {d2!r}, linf {dinf:.4f} (witness {witness:.4f}), "
                             f"min over polygons {poly_min:.2e}")


def test_criterion_12_angle_length(criterion):
    rng = np.random.default_rng(12)
    worst = math.inf
    for p in (1.0, 2.0, math.inf):
        for _ in range(500):
            t = rng.uniform(0, 2 * math.pi)
            v = Point2(math.cos(t), math.sin(t)) * float(rng.uniform(0.2, 3.0))
            s1, s2 = rng.uniform(-3, 3, 2)
            a, b = v + v.rot90() * float(s1), v + v.rot90() * float(s2)
            worst = min(worst, angle_length_margin(Lp(p), v, a, b))
    e = (1.0, 0.0)
    examples = [
        abs(angle_length_margin(Lp(2), e, (1, -1), (1, 1)) - (2 - math.pi / 2)),
        abs(angle_length_margin(Lp(math.inf), e, (1, -1), (1, 1)) - (2 - math.pi / 2)),
        abs(angle_length_margin(Lp(1), e, (1, -0.5), (1, 0.5)) - (1 - 2 * math.atan(0.5))),
    ]
    ok = worst > 0 and max(examples) <= 1e-9
    assert criterion(12, ok, f"min margin over 1500 probes {worst:.2e}, "
                             f"worked examples within {max(examples):.1e}")


def test_criterion_13_monotonicity(criterion):
    counts = {}
    for check in ("arclength.nested", "arclength.norm_comparison"):
        counts[check] = sum(
            not o.ok for i in range(500) for o in replay(check, trial_seed(13, i))
        )
    ok = not any(counts.values())
    assert criterion(13, ok, f"500 pairs each, violations {counts}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
