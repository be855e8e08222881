"""Tangent-map Lyapunov exponents."""

import math

import numpy as np
import pytest

from delaylogistic import (
    DegenerateError,
    MapParameters,
    OrbitSpec,
    OrbitTerminatedError,
    jacobian_t2,
    largest_lyapunov,
    period_two_cycles,
    tangent_jacobian,
)


class TestTangentJacobian:
    def test_at_origin(self):
        alpha = 0.7 + 0.3j
        jac = tangent_jacobian(MapParameters(alpha, 2 + 3j), 0, 0)
        assert jac[0, 0] == 0 and jac[0, 1] == 1
        assert jac[1, 0] == 0 and jac[1, 1] == alpha

    def test_beta_zero_linear_everywhere(self):
        alpha = 1.5 - 0.5j
        jac = tangent_jacobian(MapParameters(alpha, 0), 3 + 4j, -2 + 1j)
        assert jac[1, 0] == 0 and jac[1, 1] == alpha

    def test_matches_finite_differences_at_equilibrium(self):
        params = MapParameters(1j, 2 + 3j)
        z2 = (params.alpha - 1) / params.beta
        jac = tangent_jacobian(params, z2, z2)

        def step(u, v):
            return (v, params.alpha * v / (1 + params.beta * u))

        h = 1e-6
        fd_21 = (step(z2 + h, z2)[1] - step(z2 - h, z2)[1]) / (2 * h)
        fd_22 = (step(z2, z2 + h)[1] - step(z2, z2 - h)[1]) / (2 * h)
        assert abs(jac[1, 0] - fd_21) < 1e-6 * (1 + abs(jac[1, 0]))
        assert abs(jac[1, 1] - fd_22) < 1e-6 * (1 + abs(jac[1, 1]))

    def test_forbidden_set_raises(self):
        with pytest.raises(DegenerateError):
            tangent_jacobian(MapParameters(1, 1), 0.3, -1)


class TestLargestLyapunov:
    def test_sink_rate_is_log_alpha(self):
        # orbit falls to 0 where the Jacobian is [[0,1],[0,alpha]]
        params = MapParameters(0.5, 0.5)
        spec = OrbitSpec(0.05 + 0.02j, -0.03 + 0.01j, n_iterations=101_000, transient=1000)
        report = largest_lyapunov(params, spec)
        assert report.lambda_max == pytest.approx(math.log(0.5), abs=0.01)
        assert report.verdict == "NonChaotic"
        assert report.lambda_max == report.running_estimates[-1]
        assert report.n_used == 100_000

    def test_stable_period2_consistency(self):
        # on a stable cycle the exponent is half the log of the larger
        # eigenvalue modulus of the T^2 Jacobian
        params = MapParameters(-1.5, 1)
        cyc = period_two_cycles(params)[0]
        jac = jacobian_t2(params, cyc)
        expected = 0.5 * math.log(max(abs(m) for m in jac.eigenvalues))
        spec = OrbitSpec(cyc.phi, cyc.psi, n_iterations=50_000, transient=100)
        report = largest_lyapunov(params, spec)
        assert report.lambda_max == pytest.approx(expected, abs=0.01)

    def test_unstable_period2_short_window_consistency(self):
        # the alpha=i cycle is expanding; before rounding ejects the orbit
        # (~250 steps) the exponent matches (1/2) log sqrt(2) = log(2)/4
        params = MapParameters(1j, 2 + 3j)
        cyc = period_two_cycles(params)[0]
        spec = OrbitSpec(cyc.phi, cyc.psi, n_iterations=200, transient=0)
        report = largest_lyapunov(params, spec)
        assert report.lambda_max == pytest.approx(math.log(2) / 4, abs=0.02)

    def test_chaotic_regime_positive(self):
        params = MapParameters(8 + 43j, 1)
        spec = OrbitSpec(0.3 + 0.1j, -0.2 + 0.4j, n_iterations=150_000, transient=100_000)
        report = largest_lyapunov(params, spec)
        assert report.lambda_max > 1e-3
        assert report.verdict == "Chaotic"
        assert report.max_orbit_modulus > 0

    def test_renormalization_interval_invariance(self):
        params = MapParameters(8 + 43j, 1)
        spec = OrbitSpec(0.3 + 0.1j, -0.2 + 0.4j, n_iterations=21_000, transient=1000)
        lam1 = largest_lyapunov(params, spec, renorm_interval=1).lambda_max
        lam10 = largest_lyapunov(params, spec, renorm_interval=10).lambda_max
        assert lam1 == pytest.approx(lam10, abs=1e-6)

    def test_tangent_scale_invariance(self):
        params = MapParameters(0.9 + 0.4j, 1.1)
        spec = OrbitSpec(0.2 + 0.1j, 0.1 - 0.2j, n_iterations=5000, transient=100)
        a = largest_lyapunov(params, spec, initial_tangent=(1 + 0j, 1 + 0j))
        b = largest_lyapunov(params, spec, initial_tangent=(10 + 0j, 10 + 0j))
        assert a.lambda_max == pytest.approx(b.lambda_max, abs=1e-12)

    def test_running_estimates_structure(self):
        params = MapParameters(0.5, 0.5)
        spec = OrbitSpec(0.1, 0.1, n_iterations=1050, transient=50)
        report = largest_lyapunov(params, spec, renorm_interval=7)
        # 1000 steps = 142 full renorms + partial tail
        assert len(report.running_estimates) == 143
        assert report.running_estimates[-1] == report.lambda_max

    def test_terminated_orbit_raises(self):
        with pytest.raises(OrbitTerminatedError):
            largest_lyapunov(
                MapParameters(1, 1), OrbitSpec(-1, 0.5, n_iterations=100, transient=10)
            )

    def test_bad_inputs(self):
        params = MapParameters(0.5, 0.5)
        spec = OrbitSpec(0.1, 0.1, n_iterations=100, transient=10)
        with pytest.raises(ValueError):
            largest_lyapunov(params, spec, renorm_interval=0)
        with pytest.raises(ValueError):
            largest_lyapunov(params, spec, initial_tangent=(0, 0))
