"""Cycle detection and parameter-point classification."""

import numpy as np
import pytest

from delaylogistic import (
    ClassifyBudgets,
    InsufficientDataError,
    MapParameters,
    OrbitSpec,
    classify_parameter_point,
    detect_cycle,
    generate_orbit,
    period_two_cycles,
)
from delaylogistic.cycles import (
    CONVERGING,
    EXACTLY_PERIODIC,
    NO_CYCLE,
    QUICK_BUDGETS,
    draw_initial_pair,
)

FIG3_POINTS = (0.316268 + 0.129975j, -0.288941 + 0.157085j, -0.181173 - 0.056291j)


def fig3_orbit(n=30):
    params = MapParameters(1j, 2 + 3j)
    return params, generate_orbit(params, OrbitSpec(FIG3_POINTS[0], FIG3_POINTS[1], n_iterations=n))


class TestDetectCycle:
    def test_constant_orbit_period_one(self):
        orbit = generate_orbit(MapParameters(1j, 2 + 3j), OrbitSpec(0, 0, n_iterations=60))
        report = detect_cycle(orbit, transient=10, p_max=8, match_tol=1e-7, window=16)
        assert report.detected and report.period == 1
        assert report.residual == 0.0
        assert report.classification == EXACTLY_PERIODIC
        assert report.representative_points == [0]

    def test_period3_from_published_points(self):
        _, orbit = fig3_orbit()
        report = detect_cycle(orbit, transient=0, p_max=10, match_tol=1e-4, window=8)
        assert report.detected and report.period == 3
        assert report.window_start == 0
        for pv in FIG3_POINTS:
            assert min(abs(z - pv) for z in report.representative_points) < 1e-3

    def test_period10_from_published_points(self):
        params = MapParameters(1 / 3 + 1j, 2 + 1j)
        orbit = generate_orbit(
            params, OrbitSpec(-0.0197446 - 1.28723j, 1.03398 + 0.925847j, n_iterations=32)
        )
        report = detect_cycle(orbit, transient=0, p_max=12, match_tol=2e-3, window=8)
        assert report.detected and report.period == 10

    def test_period10_orbit_settles_to_period5(self):
        # the listed period-10 cycle is unstable; the attractor for these
        # parameters is an exactly periodic 5-cycle
        params = MapParameters(1 / 3 + 1j, 2 + 1j)
        orbit = generate_orbit(
            params, OrbitSpec(-0.0197446 - 1.28723j, 1.03398 + 0.925847j, n_iterations=3000)
        )
        report = detect_cycle(orbit, transient=2000, p_max=64, match_tol=1e-7, window=192)
        assert report.detected and report.period == 5
        assert report.classification == EXACTLY_PERIODIC

    def test_minimality_divisors_fail_on_same_window(self):
        params = MapParameters(1 / 3 + 1j, 2 + 1j)
        orbit = generate_orbit(params, OrbitSpec(0.2 + 0.1j, -0.3 + 0.2j, n_iterations=3000))
        window = 192
        report = detect_cycle(orbit, transient=2000, p_max=64, match_tol=1e-7, window=window)
        assert report.detected
        p = report.period
        tail = np.asarray(orbit.points[2000 + 1 :], dtype=complex)
        for d in range(1, p):
            if p % d:
                continue
            res_d = float(np.max(np.abs(tail[d : d + window] - tail[:window])))
            assert res_d >= 1e-7

    def test_shift_invariance(self):
        params = MapParameters(1 / 3 + 1j, 2 + 1j)
        orbit = generate_orbit(params, OrbitSpec(0.2 + 0.1j, -0.3 + 0.2j, n_iterations=3100))
        base = detect_cycle(orbit, transient=2000, p_max=64, match_tol=1e-7, window=192)
        assert base.detected
        for k in range(1, base.period):
            shifted = detect_cycle(orbit, transient=2000 + k, p_max=64, match_tol=1e-7, window=192)
            assert shifted.period == base.period
            assert shifted.window_start == base.window_start + k

    def test_refeeding_representatives_reproduces_residual(self):
        params = MapParameters(1 / 3 + 1j, 2 + 1j)
        orbit = generate_orbit(params, OrbitSpec(0.2 + 0.1j, -0.3 + 0.2j, n_iterations=3000))
        report = detect_cycle(orbit, transient=2000, p_max=64, match_tol=1e-7, window=192)
        assert report.detected
        p = report.period
        reps = report.representative_points
        orbit2 = generate_orbit(params, OrbitSpec(reps[0], reps[1], n_iterations=20 * p))
        pts = orbit2.points
        residual2 = max(abs(pts[i + p] - pts[i]) for i in range(len(pts) - p))
        assert residual2 <= max(10 * report.residual, 1e-14)

    def test_stable_period2_cycle_detected_as_period_2(self):
        params = MapParameters(-1.5, 1)
        cyc = period_two_cycles(params)[0]
        orbit = generate_orbit(params, OrbitSpec(cyc.phi, cyc.psi, n_iterations=400))
        report = detect_cycle(orbit, transient=100, p_max=16, match_tol=1e-9, window=64)
        assert report.detected and report.period == 2

    def test_no_cycle_reports_best_candidate(self):
        # chaotic parameters: nothing matches at 1e-7, best candidate recorded
        params = MapParameters(8 + 43j, 1)
        orbit = generate_orbit(params, OrbitSpec(0.3 + 0.1j, -0.2 + 0.4j, n_iterations=3000))
        report = detect_cycle(orbit, transient=1000, p_max=64, match_tol=1e-7, window=192)
        assert not report.detected
        assert report.period is None
        assert report.classification == NO_CYCLE
        assert report.best_period is not None
        assert report.residual > 1e-7

    def test_too_short_orbit_raises(self):
        orbit = generate_orbit(MapParameters(0.5, 0.5), OrbitSpec(0.1, 0.1, n_iterations=50))
        with pytest.raises(InsufficientDataError):
            detect_cycle(orbit, transient=0, p_max=64, match_tol=1e-7, window=192)

    def test_terminated_orbit_raises(self):
        orbit = generate_orbit(MapParameters(1, 1), OrbitSpec(-1, 0.5, n_iterations=5000))
        with pytest.raises(InsufficientDataError):
            detect_cycle(orbit, transient=0, p_max=8, match_tol=1e-7, window=24)


class TestClassify:
    def test_sink_regime(self):
        res = classify_parameter_point(
            MapParameters(0.5, 0.5), n_seeds=5, rng_seed=1, budgets=QUICK_BUDGETS
        )
        assert res.verdict == "ConvergentToEquilibrium"
        assert res.agree_fraction == 1.0

    def test_unbounded_regime(self):
        # beta = 0 makes the map linear with |alpha| > 1: every orbit overflows
        res = classify_parameter_point(
            MapParameters(3, 0), n_seeds=4, rng_seed=1, budgets=QUICK_BUDGETS
        )
        assert res.verdict == "Unbounded"

    def test_slow_attractor_locks_to_period_4(self):
        # alpha = i, beta = 2+3i: orbits settle (slowly) onto an exactly
        # 4-periodic cycle in double precision
        res = classify_parameter_point(
            MapParameters(1j, 2 + 3j), n_seeds=4, rng_seed=3, budgets=QUICK_BUDGETS
        )
        assert res.verdict == "Periodic" and res.period == 4

    def test_near_recurrent_regime_is_inconclusive(self):
        # this regime recurs strongly around period ~1900 but never locks at
        # 1e-7, and its exponent sits below the chaos threshold
        res = classify_parameter_point(
            MapParameters(35 + 94j, 88 + 55j), n_seeds=4, rng_seed=3, budgets=QUICK_BUDGETS
        )
        assert res.verdict == "Inconclusive"
        assert all(o.kind == "Inconclusive" for o in res.seed_outcomes)

    def test_deterministic_in_rng_seed(self):
        a = classify_parameter_point(MapParameters(0.5, 0.5), 4, 7, QUICK_BUDGETS)
        b = classify_parameter_point(MapParameters(0.5, 0.5), 4, 7, QUICK_BUDGETS)
        assert [(o.kind, o.period, o.lambda_max) for o in a.seed_outcomes] == [
            (o.kind, o.period, o.lambda_max) for o in b.seed_outcomes
        ]

    def test_draws_are_in_unit_disk_and_stream_keyed(self):
        z1, z2 = draw_initial_pair(5, (), 0)
        assert abs(z1) <= 1 and abs(z2) <= 1
        assert draw_initial_pair(5, (), 0) == (z1, z2)
        assert draw_initial_pair(5, (1,), 0) != (z1, z2)
        assert draw_initial_pair(5, (), 1) != (z1, z2)

    def test_budget_window_derivation(self):
        b = ClassifyBudgets(transient=100, p_max=8, window=None)
        assert b.effective_window == 24
        assert b.n_iterations == 100 + 16 + 24
        assert ClassifyBudgets(window=77).effective_window == 77
