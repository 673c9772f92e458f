import math

import numpy as np
import pytest

from coldplasma.numerics import (
    QuadratureError,
    Trajectory,
    integrate_adaptive,
    quad_singular,
)


def decay(theta, y):
    return -y


def tangent(theta, y):
    return np.asarray([-y[0] * y[0] - 1.0])


def harmonic(theta, y):
    return np.asarray([-y[1], y[0]])


class TestIntegrateAdaptive:
    def test_exponential_decay(self):
        traj = integrate_adaptive(decay, [1.0], (0.0, 1.0), rel_tol=1e-9)
        assert abs(traj.final_state[0] - math.exp(-1.0)) < 1e-9
        assert not traj.terminated_early

    def test_tangent_blowup_guard(self):
        # v' = -v^2 - 1 from 0 is -tan(theta): guard stops near pi/2
        traj = integrate_adaptive(tangent, [0.0], (0.0, 3.0), rel_tol=1e-9)
        assert traj.terminated_early
        assert traj.termination_reason == "blowup_guard"
        assert abs(traj.final_time - 0.5 * math.pi) < 1e-8

    def test_harmonic_event_at_pi(self):
        # V = -sin(theta): the root at theta=0 is skipped, first event at pi
        traj = integrate_adaptive(
            harmonic, [0.0, 1.0], (0.0, 7.0), rel_tol=1e-10,
            events=[lambda th, y: y[0]], event_labels=["V_zero"],
        )
        times = [t for t, label in traj.events if label == "V_zero"]
        assert len(times) == 2
        assert abs(times[0] - math.pi) < 1e-8
        assert abs(times[1] - 2.0 * math.pi) < 1e-8

    def test_event_residual_small(self):
        rel_tol = 1e-9
        traj = integrate_adaptive(
            harmonic, [0.3, 0.9], (0.0, 10.0), rel_tol=rel_tol,
            events=[lambda th, y: y[0] - 0.5],
        )
        assert traj.events
        for theta_event, _ in traj.events:
            value = traj.at(theta_event)[0] - 0.5
            assert abs(value) < 10.0 * rel_tol * max(1.0, theta_event)

    @pytest.mark.parametrize(
        "rhs, y0, span, exact",
        [
            (decay, [1.0], (0.0, 1.0), lambda: math.exp(-1.0)),
            (harmonic, [0.0, 1.0], (0.0, 5.0), lambda: -math.sin(5.0)),
        ],
    )
    def test_halving_tolerance_never_hurts(self, rhs, y0, span, exact):
        errors = []
        for rel_tol in (1e-5, 1e-7, 1e-9, 1e-11):
            traj = integrate_adaptive(rhs, y0, span, rel_tol=rel_tol)
            errors.append(abs(traj.final_state[0] - exact()))
        for coarse, fine in zip(errors, errors[1:]):
            assert fine <= coarse * 1.05 + 1e-14

    def test_dense_output_matches_states(self):
        traj = integrate_adaptive(harmonic, [0.0, 1.0], (0.0, 6.0), rel_tol=1e-10)
        mid = 0.5 * (traj.times[3] + traj.times[4])
        state = traj.at(mid)
        assert abs(state[0] - (-math.sin(mid))) < 1e-8

    def test_validation_errors(self):
        with pytest.raises(ValueError):
            integrate_adaptive(decay, [1.0], (1.0, 0.0))
        with pytest.raises(ValueError):
            integrate_adaptive(decay, [1.0], (0.0, 1.0), rel_tol=2.0)
        with pytest.raises(ValueError):
            integrate_adaptive(decay, [np.nan], (0.0, 1.0))

    def test_trajectory_invariants_enforced(self):
        with pytest.raises(ValueError):
            Trajectory(times=np.array([0.0, 0.0]), states=np.zeros((2, 1)))
        with pytest.raises(ValueError):
            Trajectory(times=np.array([0.0, 1.0]), states=np.zeros((3, 1)))
        with pytest.raises(ValueError):
            Trajectory(
                times=np.array([0.0, 1.0]),
                states=np.zeros((2, 1)),
                events=[(2.0, "late")],
            )


class TestQuadSingular:
    def test_inverse_sqrt(self):
        value = quad_singular(lambda x: x ** -0.5, 0.0, 1.0, (True, False))
        assert abs(value - 2.0) < 1e-10

    def test_arcsine(self):
        value = quad_singular(
            lambda x: 1.0 / math.sqrt(1.0 - x * x), -1.0, 1.0, (True, True)
        )
        assert abs(value - math.pi) < 1e-10

    def test_smooth_agrees_with_plain(self):
        f = lambda x: math.cos(3.0 * x) * math.exp(-x)
        plain = quad_singular(f, 0.0, 2.0, (False, False), abs_tol=1e-12)
        forced = quad_singular(f, 0.0, 2.0, (True, True), abs_tol=1e-12)
        assert abs(plain - forced) < 1e-11

    def test_nonconvergent_raises(self):
        # genuinely divergent integral
        with pytest.raises(QuadratureError):
            quad_singular(lambda x: 1.0 / x, 0.0, 1.0, (True, False), abs_tol=1e-10)

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            quad_singular(lambda x: x, 1.0, 0.0)
