import math

import numpy as np
import pytest

from coldplasma import rel, twave

TWO_PI = 2.0 * math.pi


class TestCriticalSpeed:
    def test_trivial_wave(self):
        assert twave.critical_speed(0.0) == 0.0

    def test_unit_invariant(self):
        assert abs(twave.critical_speed(1.0) - math.sqrt(5.0) / 3.0) < 1e-15

    def test_always_below_light(self, rng):
        for I2 in rng.uniform(0.0, 50.0, size=20):
            assert twave.critical_speed(float(I2)) < 1.0

    def test_nonrel_threshold_is_more_stringent(self):
        # same small-amplitude data: |I0| can exceed the relativistic value
        for I0 in (0.5, 1.0, 2.0):
            I2 = I0 * I0
            assert twave.critical_speed_nonrel(I0) >= twave.critical_speed(I2) or I0 < 1.0
        # for I0 >= 1 the nonrelativistic threshold is larger outright
        assert twave.critical_speed_nonrel(2.0) > twave.critical_speed(4.0)


class TestRelativisticProfile:
    def test_reference_wave(self):
        prof = twave.wave_profile(1.0, 3.0, n_periods=2, samples_per_period=256)
        assert abs(prof.P_plus - math.sqrt(1.25)) < 1e-12
        assert np.max(prof.P) <= prof.P_plus + 1e-9
        assert np.min(prof.P) >= prof.P_minus - 1e-9
        assert prof.invariant_residual() < 1e-8
        # anchored at P(0) = 0, E(0) = +sqrt(I2)
        P0, E0 = prof(np.array([0.0]))
        assert abs(P0[0]) < 1e-10 and abs(E0[0] - 1.0) < 1e-10

    def test_periodicity(self):
        prof = twave.wave_profile(1.0, 3.0)
        xi = np.array([0.37, 2.0, 11.1])
        P1, E1 = prof(xi)
        P2, E2 = prof(xi + prof.X)
        assert np.max(np.abs(P1 - P2)) < 1e-9
        assert np.max(np.abs(E1 - E2)) < 1e-9

    def test_near_critical_steep_but_smooth(self):
        prof = twave.wave_profile(1.0, 0.9, samples_per_period=256)
        assert prof.invariant_residual() < 1e-8
        assert prof.max_slope() < 20.0

    def test_wave_system_residuals(self):
        # independent high-order finite differences on the profile evaluator
        prof = twave.wave_profile(1.0, 3.0)
        delta = 1e-3
        for xi in np.linspace(0.5, prof.X - 0.5, 9):
            stencil = np.array([xi - 2 * delta, xi - delta, xi + delta, xi + 2 * delta])
            P_s, E_s = prof(stencil)
            P, E = prof(np.array([xi]))
            dP = (P_s[0] - 8 * P_s[1] + 8 * P_s[2] - P_s[3]) / (12 * delta)
            dE = (E_s[0] - 8 * E_s[1] + 8 * E_s[2] - E_s[3]) / (12 * delta)
            V = float(rel.velocity(P[0]))
            assert abs((-3.0 + V) * dP + E[0]) < 1e-6
            assert abs((-3.0 + V) * dE - V) < 1e-6

    def test_subcritical_rejected(self):
        with pytest.raises(ValueError):
            twave.wave_profile(1.0, 0.7)
        with pytest.raises(ValueError):
            twave.wave_period(1.0, 0.7)

    def test_negative_speed(self):
        prof = twave.wave_profile(1.0, -3.0)
        assert prof.invariant_residual() < 1e-8
        assert abs(prof.X - twave.wave_period(1.0, 3.0)) < 1e-7


class TestWavePeriod:
    def test_matches_measured_profile_period(self):
        prof = twave.wave_profile(1.0, 3.0)
        X_quad = twave.wave_period(1.0, 3.0)
        assert abs(X_quad - prof.X) < 1e-5
        # and both equal |w| times the characteristic orbit period
        assert abs(X_quad - 3.0 * rel.period(3.0)) < 1e-7

    def test_small_amplitude_limit(self):
        X = twave.wave_period(1e-6, 3.0)
        assert abs(X / (TWO_PI * 3.0) - 1.0) < 1e-5

    def test_finite_positive(self):
        X = twave.wave_period(1.0, 3.0)
        assert 0.0 < X < 100.0
        # frozen value, cross-checked against the phase-parameter route
        assert abs(X - 22.14205364832) < 1e-7


class TestSlopeBlowup:
    def test_grows_unboundedly_toward_critical(self):
        w_crit = twave.critical_speed(1.0)
        sup_coarse = max(twave.slope_sup(1.0, w_crit + 1e-2))
        sup_fine = max(twave.slope_sup(1.0, w_crit + 1e-4))
        assert sup_fine > 1e3
        assert sup_fine > 50.0 * sup_coarse

    def test_field_slope_dominates(self):
        w_crit = twave.critical_speed(1.0)
        sup_dP, sup_dE = twave.slope_sup(1.0, w_crit + 1e-4)
        assert sup_dE > sup_dP
        assert abs(sup_dE - w_crit / 1e-4) < 2.0e-2 * sup_dE

    def test_sampled_profile_sees_the_steepening(self):
        # the phase-parameter sampling clusters points in the steep window,
        # where the field slope V/(V - w) exceeds a thousand
        w_crit = twave.critical_speed(1.0)
        w = w_crit + 1e-4
        xi, P, E = twave.wave_branch_data(1.0, w, n_samples=4096)
        V = rel.velocity(P)
        assert np.max(np.abs(V / (V - w))) > 1e3


class TestNonrelativisticProfile:
    def test_period_exact(self):
        prof = twave.wave_profile_nonrel(1.0, 3.0)
        assert prof.X == TWO_PI * 3.0

    def test_invariant_and_bounds(self):
        prof = twave.wave_profile_nonrel(1.0, 3.0, n_periods=2)
        assert prof.invariant_residual() < 1e-12
        assert np.max(np.abs(prof.P)) <= 1.0 + 1e-12

    def test_anchor(self):
        prof = twave.wave_profile_nonrel(1.0, 3.0, V_at_0=0.4)
        V0, E0 = prof(np.array([0.0]))
        assert abs(V0[0] - 0.4) < 1e-10
        assert abs(E0[0] - math.sqrt(1.0 - 0.16)) < 1e-10

    def test_implicit_relation_holds(self):
        # xi + c = w arcsin(V/I0) + sqrt(I0^2 - V^2) on the principal sheet
        I0, w = 1.0, 3.0
        prof = twave.wave_profile_nonrel(I0, w)
        c = w * math.asin(0.0) + I0  # anchor V(0) = 0, E(0) = +I0
        # principal arcsin sheet around the anchor: E > 0 there
        xi = np.linspace(-1.2, 1.2, 25)
        V, E = prof(xi)
        assert np.all(E > 0.0)
        lhs = xi + c
        rhs = w * np.arcsin(V / I0) + np.sqrt(I0 * I0 - V ** 2)
        assert np.max(np.abs(lhs - rhs)) < 1e-9

    def test_wave_system_residuals(self):
        prof = twave.wave_profile_nonrel(0.8, 2.5)
        delta = 1e-4
        for xi in np.linspace(0.3, prof.X - 0.3, 7):
            stencil = np.array([xi - delta, xi + delta])
            V_s, E_s = prof(stencil)
            V, E = prof(np.array([xi]))
            dV = (V_s[1] - V_s[0]) / (2 * delta)
            dE = (E_s[1] - E_s[0]) / (2 * delta)
            assert abs((-2.5 + V[0]) * dV + E[0]) < 1e-6
            assert abs((-2.5 + V[0]) * dE - V[0]) < 1e-6

    def test_validation(self):
        with pytest.raises(ValueError):
            twave.wave_profile_nonrel(1.0, 0.9)
        with pytest.raises(ValueError):
            twave.wave_profile_nonrel(1.0, 3.0, V_at_0=1.5)

    def test_trivial_amplitude(self):
        prof = twave.wave_profile_nonrel(0.0, 2.0)
        assert prof.X == TWO_PI * 2.0
        assert np.all(prof.P == 0.0) and np.all(prof.E == 0.0)


class TestBranchData:
    def test_subcritical_multivalued(self):
        xi, P, E = twave.wave_branch_data(1.0, 0.5)
        # xi is non-monotone: the wave is multivalued below critical speed
        assert np.any(np.diff(xi) > 0) and np.any(np.diff(xi) < 0)
        assert np.max(np.abs(twave.wave_invariant(P, E) - 1.0)) < 1e-7

    def test_supercritical_monotone(self):
        xi, P, E = twave.wave_branch_data(1.0, 3.0)
        assert np.all(np.diff(xi) < 0)


class TestRandomizedInvariant:
    def test_profiles_conserve_invariant(self, rng):
        for _ in range(8):
            I2 = float(rng.uniform(0.1, 4.0))
            w = float(twave.critical_speed(I2) + rng.uniform(0.05, 3.0))
            prof = twave.wave_profile(I2, w, samples_per_period=128)
            assert prof.invariant_residual() < 1e-8
            assert abs(prof.X - twave.wave_period(I2, w)) < 1e-5
