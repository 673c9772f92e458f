"""Adaptive ODE integration and endpoint-singular quadrature.

Shared numerical kernels for the characteristic, Hill and traveling-wave
machinery: an embedded Runge-Kutta 5(4) driver (SciPy's RK45) wrapped with
dense output, sign-change event location and a blow-up guard, plus improper
quadrature that removes inverse-square-root endpoint singularities with a
trigonometric substitution.

All systems integrated here are smooth up to blow-up, so a non-stiff
embedded pair is the right tool; blow-ups are converted into detectable
events by the guard.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import brentq

__all__ = [
    "DEFAULT_BLOWUP_GUARD",
    "QuadratureError",
    "Trajectory",
    "integrate_adaptive",
    "quad_singular",
]

DEFAULT_BLOWUP_GUARD = 1.0e12

#: termination reasons
REASON_BLOWUP_GUARD = "blowup_guard"
REASON_STEP_UNDERFLOW = "step_underflow"


class QuadratureError(RuntimeError):
    """Quadrature did not converge to the requested absolute tolerance."""


@dataclass
class Trajectory:
    """Integrated time series of a state vector.

    Attributes
    ----------
    times : (n,) ndarray
        Accepted step times, strictly increasing.
    states : (n, dim) ndarray
        State vectors matching ``times`` row by row.
    events : list of (theta, label)
        Located event roots, sorted by time, all within the integrated span.
    terminated_early : bool
        True when integration stopped before the requested end (blow-up
        guard hit, or the step size underflowed near a singularity).
    termination_reason : str or None
        One of ``"blowup_guard"``, ``"step_underflow"`` when terminated
        early.
    dense : callable or None
        Dense-output interpolant ``theta -> state`` valid on
        ``[times[0], times[-1]]`` (vectorized over theta).
    """

    times: np.ndarray
    states: np.ndarray
    events: list[tuple[float, str]] = field(default_factory=list)
    terminated_early: bool = False
    termination_reason: str | None = None
    dense: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self) -> None:
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=float)
        if self.states.shape[0] != self.times.shape[0]:
            raise ValueError("times and states lengths differ")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0.0):
            raise ValueError("times must be strictly increasing")
        for theta_event, _ in self.events:
            if not (self.times[0] <= theta_event <= self.times[-1]):
                raise ValueError("event time outside the integrated span")

    @property
    def final_time(self) -> float:
        return float(self.times[-1])

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    def at(self, theta):
        """Interpolate the state at ``theta`` using dense output."""
        if self.dense is None:
            raise ValueError("trajectory carries no dense output")
        return self.dense(theta)

    def first_event(self, label: str | None = None) -> tuple[float, str] | None:
        for theta_event, lab in self.events:
            if label is None or lab == label:
                return (theta_event, lab)
        return None


def integrate_adaptive(
    rhs: Callable,
    y0,
    span: Sequence[float],
    rel_tol: float = 1.0e-9,
    events: Sequence[Callable] = (),
    event_labels: Sequence[str] | None = None,
    blowup_guard: float = DEFAULT_BLOWUP_GUARD,
    abs_tol: float | None = None,
    max_step: float = np.inf,
    event_refine: int = 8,
) -> Trajectory:
    """Integrate ``y' = rhs(theta, y)`` adaptively over ``span``.

    Event functions must have signature ``g(theta, y)`` and be vectorized
    over trailing sample axes (``theta`` shape (m,), ``y`` shape (dim, m)).
    Roots are located from strict sign changes on a dense-output subgrid of
    ``event_refine`` samples per accepted step and refined to within
    ``rel_tol * max(1, |theta|)``.  A root sitting exactly at ``span[0]`` is
    not reported.

    Integration halts early when ``max|y|`` exceeds ``blowup_guard``
    (``terminated_early`` set, reason ``"blowup_guard"``) or when the step
    size underflows while approaching a singularity (reason
    ``"step_underflow"``; the stop point approximates the blow-up time).
    """
    theta_a, theta_b = float(span[0]), float(span[1])
    if not theta_b > theta_a:
        raise ValueError("span must satisfy theta_b > theta_a")
    if not 0.0 < rel_tol < 1.0:
        raise ValueError("rel_tol must lie in (0, 1)")
    y0 = np.atleast_1d(np.asarray(y0, dtype=float))
    if not np.all(np.isfinite(y0)):
        raise ValueError("y0 must be finite")
    f0 = np.asarray(rhs(theta_a, y0), dtype=float)
    if not np.all(np.isfinite(f0)):
        raise ValueError("rhs is not finite at y0")
    if np.max(np.abs(y0)) >= blowup_guard:
        raise ValueError("initial state already beyond the blow-up guard")

    def _guard(theta, y):
        return blowup_guard - np.max(np.abs(y))

    _guard.terminal = True

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        sol = solve_ivp(
            rhs,
            (theta_a, theta_b),
            y0,
            method="RK45",
            rtol=rel_tol,
            atol=abs_tol if abs_tol is not None else rel_tol * 1.0e-2,
            dense_output=True,
            events=[_guard],
            max_step=max_step,
        )

    terminated_early = False
    reason = None
    if sol.status == 1:  # guard event
        terminated_early = True
        reason = REASON_BLOWUP_GUARD
    elif sol.status < 0:  # solver gave up: step underflow at a singularity
        terminated_early = True
        reason = REASON_STEP_UNDERFLOW

    times = sol.t
    states = sol.y.T
    dense = sol.sol

    located: list[tuple[float, str]] = []
    if events and times.size > 1 and dense is not None:
        if event_labels is None:
            event_labels = [f"event{i}" for i in range(len(events))]
        located = _locate_events(
            events, event_labels, dense, times, rel_tol, event_refine
        )

    return Trajectory(
        times=times,
        states=states,
        events=located,
        terminated_early=terminated_early,
        termination_reason=reason,
        dense=dense,
    )


def _locate_events(events, labels, dense, times, rel_tol, refine):
    """Scan dense output for strict sign changes and refine the roots."""
    # one shared subgrid: `refine` samples inside every accepted step
    frac = np.linspace(0.0, 1.0, refine + 1)
    grid = (times[:-1, None] + np.diff(times)[:, None] * frac[None, :]).ravel()
    grid = np.unique(grid)
    values = dense(grid)  # (dim, m)

    found: list[tuple[float, str]] = []
    for ev, label in zip(events, labels):
        g = np.asarray(ev(grid, values), dtype=float)
        sign_change = g[:-1] * g[1:] < 0.0
        for k in np.nonzero(sign_change)[0]:
            a, b = grid[k], grid[k + 1]
            xtol = rel_tol * max(1.0, abs(b))
            root = brentq(
                lambda th: float(ev(np.asarray([th]), dense(np.asarray([th])))[0]),
                a,
                b,
                xtol=xtol,
                rtol=8.9e-16,
            )
            found.append((float(root), label))
        # exact zeros on the subgrid (skip the starting point)
        for k in np.nonzero(g == 0.0)[0]:
            if grid[k] > times[0]:
                found.append((float(grid[k]), label))
    found.sort(key=lambda item: item[0])
    # drop duplicates from an exact zero doubling as a sign change
    deduped: list[tuple[float, str]] = []
    for theta_event, label in found:
        if deduped and deduped[-1][1] == label and abs(
            deduped[-1][0] - theta_event
        ) < 1e3 * rel_tol * max(1.0, abs(theta_event)):
            continue
        deduped.append((theta_event, label))
    return deduped


def quad_singular(
    integrand: Callable[[float], float],
    a: float,
    b: float,
    singular_ends: tuple[bool, bool] = (False, False),
    abs_tol: float = 1.0e-10,
    limit: int = 200,
) -> float:
    """Improper integral of ``integrand`` over (a, b) within ``abs_tol``.

    Endpoints flagged in ``singular_ends`` may carry an integrable
    inverse-square-root singularity; the substitution
    ``x = a + (b - a) sin^2(phi)`` removes it exactly at both ends, after
    which plain adaptive quadrature applies.
    """
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b) and b > a):
        raise ValueError("need finite endpoints with b > a")

    if any(singular_ends):
        width = b - a

        def transformed(phi: float) -> float:
            s = math.sin(phi)
            x = a + width * s * s
            return integrand(x) * width * math.sin(2.0 * phi)

        fn, lo, hi = transformed, 0.0, 0.5 * math.pi
    else:
        fn, lo, hi = integrand, a, b

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        value, err = quad(fn, lo, hi, epsabs=0.5 * abs_tol, epsrel=0.0, limit=limit)
    if not math.isfinite(value) or err > abs_tol:
        raise QuadratureError(
            f"quadrature error estimate {err:.3e} exceeds abs_tol {abs_tol:.3e}"
        )
    return value
