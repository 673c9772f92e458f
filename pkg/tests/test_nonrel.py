import math

import numpy as np
import pytest

from coldplasma import nonrel
from coldplasma.numerics import integrate_adaptive

TWO_PI = 2.0 * math.pi


def integrate_slopes(v0, e0, span=(0.0, 4.0 * math.pi), rel_tol=1e-10, guard=1e12):
    """Direct integration of the slope subsystem (v, e)."""
    rhs = lambda th, y: np.asarray([-y[0] * y[0] - y[1], (1.0 - y[1]) * y[0]])
    return integrate_adaptive(rhs, [v0, e0], span, rel_tol=rel_tol, blowup_guard=guard)


class TestRhs:
    def test_equilibrium(self):
        assert np.allclose(nonrel.rhs_extended(0.0, np.zeros(5)), 0.0)

    def test_field_only(self):
        d = nonrel.rhs_extended(0.0, np.array([0.0, 0.0, 1.0, 0.0, 0.0]))
        assert np.allclose(d, [0.0, -1.0, 0.0, 0.0, 0.0])

    def test_slope_only(self):
        d = nonrel.rhs_extended(0.0, np.array([0.0, 0.0, 0.0, 1.0, 0.0]))
        assert np.allclose(d, [0.0, 0.0, 0.0, -1.0, 1.0])


class TestClassifySlopes:
    def test_equilibrium_smooth(self):
        v = nonrel.classify_slopes(0.0, 0.0)
        assert v.smooth
        assert v.evidence["delta"] == -1.0

    def test_boundary_breaks(self):
        # the zero-discriminant parabola is itself a blow-up orbit
        v = nonrel.classify_slopes(1.0, 0.0)
        assert v.breaks
        assert v.evidence["delta"] == 0.0

    def test_interior_smooth(self):
        v = nonrel.classify_slopes(0.5, 0.2)
        assert v.smooth
        assert abs(v.evidence["delta"] - (-0.35)) < 1e-15

    def test_agrees_with_direct_integration(self, rng):
        mismatches = 0
        checked = 0
        while checked < 200:
            v0 = rng.uniform(-1.5, 1.5)
            e0 = rng.uniform(-1.5, 1.2)
            if abs(nonrel.slope_discriminant(v0, e0)) < 0.05:
                continue
            verdict = nonrel.classify_slopes(v0, e0)
            traj = integrate_slopes(v0, e0)
            if verdict.breaks != traj.terminated_early:
                mismatches += 1
            checked += 1
        assert mismatches == 0


class TestConservation:
    def test_energy_and_phase_constant(self, rng):
        for _ in range(10):
            state0 = np.array(
                [
                    rng.uniform(-1, 1),
                    rng.uniform(-0.5, 0.5),
                    rng.uniform(-0.5, 0.5),
                    rng.uniform(-0.5, 0.5),
                    rng.uniform(-0.4, 0.4),
                ]
            )
            if nonrel.slope_discriminant(state0[3], state0[4]) >= -0.05:
                continue
            tol = 1e-10
            traj = integrate_adaptive(
                nonrel.rhs_extended, state0, (0.0, TWO_PI), rel_tol=tol
            )
            energy0 = nonrel.energy(state0[1], state0[2])
            C0 = nonrel.phase_constant(state0[3], state0[4])
            for state in traj.states[:: max(1, len(traj.states) // 20)]:
                assert abs(nonrel.energy(state[1], state[2]) - energy0) < 1e3 * tol
                if abs(state[4] - 1.0) > 0.05:
                    C = nonrel.phase_constant(state[3], state[4])
                    assert abs(C - C0) < 1e4 * tol * (1.0 + abs(C0))

    def test_period_2pi_componentwise(self):
        state0 = np.array([0.3, 0.4, -0.2, 0.3, 0.1])
        tol = 1e-11
        traj = integrate_adaptive(
            nonrel.rhs_extended, state0, (0.0, TWO_PI), rel_tol=tol
        )
        assert np.max(np.abs(traj.final_state - state0)) < 1e4 * tol

    def test_density_bound_along_trajectory(self):
        # criterion-satisfying data keeps N = 1 - e above 1/2
        traj = integrate_adaptive(
            nonrel.rhs_extended, [0.0, 0.1, 0.2, 0.4, 0.3], (0.0, 4 * TWO_PI),
            rel_tol=1e-10,
        )
        assert nonrel.slope_discriminant(0.4, 0.3) < 0.0
        assert np.all(1.0 - traj.states[:, 4] > 0.5)


class TestBlowupTime:
    def test_invariant_line_analytic(self):
        assert abs(nonrel.blowup_time(1.0, 0.0) - 0.5 * math.pi) < 1e-12

    def test_matches_ode(self):
        # frozen oracle values from guarded integration of the slope system
        theta = nonrel.blowup_time(0.6, 0.5)
        assert abs(theta - 2.80321786) < 1e-6
        traj = integrate_slopes(0.5, 0.6, span=(0.0, 20.0), rel_tol=1e-12)
        assert traj.terminated_early
        assert abs(theta - traj.final_time) < 1e-4

    def test_breaks_within_first_period(self):
        theta = nonrel.blowup_time(0.0, 1.5)
        assert 0.0 < theta < TWO_PI
        traj = integrate_slopes(1.5, 0.0, span=(0.0, 20.0), rel_tol=1e-12)
        assert abs(theta - traj.final_time) < 1e-4

    def test_random_breaking_samples_match_ode(self, rng):
        checked = 0
        while checked < 15:
            v0 = rng.uniform(-2.0, 2.0)
            e0 = rng.uniform(-1.0, 2.0)
            if nonrel.slope_discriminant(v0, e0) < 0.05:
                continue
            theta = nonrel.blowup_time(e0, v0)
            traj = integrate_slopes(v0, e0, span=(0.0, 25.0), rel_tol=1e-12)
            assert traj.terminated_early
            assert abs(theta - traj.final_time) < 1e-4
            checked += 1

    def test_smooth_regime_rejected(self):
        with pytest.raises(ValueError):
            nonrel.blowup_time(0.0, 0.0)


class TestPeriod:
    def test_degenerate_center(self):
        assert nonrel.closed_orbit_period(0.0, 0.0) == TWO_PI
        assert nonrel.closed_orbit_period_quadrature(0.0, 0.0) == TWO_PI

    @pytest.mark.parametrize("e0,v0", [(0.3, 0.0), (-0.5, 0.4)])
    def test_quadrature_gives_2pi(self, e0, v0):
        assert abs(nonrel.closed_orbit_period_quadrature(e0, v0) - TWO_PI) < 1e-6

    def test_breaking_regime_rejected(self):
        with pytest.raises(ValueError):
            nonrel.closed_orbit_period(1.0, 0.0)
        with pytest.raises(ValueError):
            nonrel.closed_orbit_period_quadrature(0.6, 0.5)


class TestLinearSolution:
    def test_trivial(self):
        W, D = nonrel.linear_solution(0.0, 0.0, 1.234)
        assert W == 0.0 and D == 0.0

    def test_initial_values(self):
        W, D = nonrel.linear_solution(0.1, 0.0, 0.0)
        assert abs(D - 0.1) < 1e-15
        assert abs(W) < 1e-15

    def test_periodicity(self):
        W0, D0 = nonrel.linear_solution(0.1, 0.2, 0.0)
        W1, D1 = nonrel.linear_solution(0.1, 0.2, TWO_PI)
        assert abs(W0 - W1) < 1e-13 and abs(D0 - D1) < 1e-13

    def test_solves_slope_system(self):
        # finite-difference residuals of W' = -(W^2 + D), D' = (1 - D) W
        coeffs = nonrel.linear_coefficients(0.15, -0.25)
        assert not coeffs.breaking
        thetas = np.linspace(0.0, TWO_PI, 17)
        delta = 1e-6
        for theta in thetas:
            Wm, Wp = coeffs.W(theta - delta), coeffs.W(theta + delta)
            Dm, Dp = coeffs.D(theta - delta), coeffs.D(theta + delta)
            W, D = coeffs.W(theta), coeffs.D(theta)
            dW = (Wp - Wm) / (2.0 * delta)
            dD = (Dp - Dm) / (2.0 * delta)
            assert abs(dW + W * W + D) < 1e-8
            assert abs(dD - (1.0 - D) * W) < 1e-8

    def test_breaking_flag_matches_criterion(self, rng):
        for _ in range(50):
            alpha = rng.uniform(-1.2, 0.9)
            beta = rng.uniform(-1.5, 1.5)
            coeffs = nonrel.linear_coefficients(alpha, beta)
            verdict = nonrel.classify_slopes(beta, alpha)
            assert coeffs.breaking == verdict.breaks

    def test_alpha_one_rejected(self):
        with pytest.raises(ValueError):
            nonrel.linear_coefficients(1.0, 0.5)


class TestCharState:
    def test_round_trip_and_invariants(self):
        state = nonrel.CharStateNR(rho=0.1, V=0.3, E=0.4, v=0.2, e=0.1)
        assert np.allclose(state.to_array(), [0.1, 0.3, 0.4, 0.2, 0.1])
        assert nonrel.CharStateNR.from_array(state.to_array()) == state
        assert abs(state.energy - 0.25) < 1e-15
        assert abs(state.phase_constant - nonrel.phase_constant(0.2, 0.1)) < 1e-15
        assert state.density == 0.9
