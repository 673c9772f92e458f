"""Traveling-wave solutions, relativistic and nonrelativistic.

A wave moving at constant speed ``w`` depends on ``xi = rho - w theta``
alone and carries a spatially constant invariant
``I2 = 2 (sqrt(1+P^2) - 1) + E^2``.  Smooth periodic profiles exist exactly
when the speed exceeds the largest particle speed on the orbit
(``critical_speed``); below it the profile becomes multivalued.

Profiles are constructed in a desingularized phase parameter sigma with
``d xi = (V - w) d sigma``, which maps the wave system onto the regular
momentum/field oscillator and removes the square-root turning points of the
profile ODE entirely; the monotone map ``xi(sigma)`` is then inverted per
sample.  Profiles are anchored at ``P(0) = 0``, ``E(0) = +sqrt(I2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import rel
from .numerics import integrate_adaptive, quad_singular

__all__ = [
    "WaveProfile",
    "critical_speed",
    "critical_speed_nonrel",
    "wave_invariant",
    "wave_profile",
    "wave_profile_nonrel",
    "wave_period",
    "slope_sup",
    "wave_branch_data",
]

TWO_PI = 2.0 * math.pi


def wave_invariant(P, E):
    """Spatial invariant 2 (sqrt(1+P^2) - 1) + E^2 of a traveling wave.

    Written as ``2 P^2/(1 + gamma) + E^2`` to stay cancellation-free for
    small momenta.
    """
    P2 = np.square(P)
    return 2.0 * P2 / (1.0 + np.sqrt(1.0 + P2)) + np.square(E)


def critical_speed(I2: float) -> float:
    """Smallest speed admitting a smooth relativistic wave of invariant I2.

    Equals the largest particle speed on the orbit,
    ``sqrt(1 - 4/(I2+2)^2) < 1``, so any ``w^2 > 1`` always suffices.
    """
    if I2 < 0.0:
        raise ValueError("wave invariant must be nonnegative")
    return rel.max_orbit_speed(I2 + 2.0)


def critical_speed_nonrel(I0: float) -> float:
    """Nonrelativistic smoothness threshold: |w| must exceed |I0|.

    More stringent than the relativistic one; it grows with the wave
    amplitude instead of saturating below 1.
    """
    return abs(I0)


@dataclass
class WaveProfile:
    """Sampled periodic traveling-wave profile.

    ``P`` holds momentum samples in the relativistic model and velocity
    samples in the nonrelativistic one.  Calling the profile evaluates
    (P, E) at arbitrary ``xi`` (periodically extended).
    """

    model: str
    w: float
    I2: float
    X: float
    P_plus: float
    P_minus: float
    xi: np.ndarray
    P: np.ndarray
    E: np.ndarray
    _eval: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]] = field(repr=False)

    def __call__(self, xi):
        return self._eval(np.asarray(xi, dtype=float))

    def invariant_residual(self) -> float:
        """Largest deviation of the sampled invariant from I2."""
        if self.model == "rel":
            sampled = wave_invariant(self.P, self.E)
        else:
            sampled = np.square(self.P) + np.square(self.E)
        return float(np.max(np.abs(sampled - self.I2)))

    def slopes(self) -> tuple[np.ndarray, np.ndarray]:
        """Exact (dP/dxi, dE/dxi) at the samples from the wave system."""
        if self.model == "rel":
            V = rel.velocity(self.P)
        else:
            V = self.P
        denom = V - self.w
        return -self.E / denom, V / denom

    def max_slope(self) -> float:
        dP, dE = self.slopes()
        return float(max(np.max(np.abs(dP)), np.max(np.abs(dE))))


def _invert_monotone(xi_dense, eval_state, velocity_of, w, targets, X):
    """Vectorized Newton inversion of the monotone map xi(sigma).

    ``eval_state(sigma)`` must return rows (P, E, xi); the derivative of the
    map is ``V - w``, bounded away from zero for supercritical speeds.
    """
    sigma_table, xi_table = xi_dense
    order = np.argsort(xi_table)
    sigma0 = np.interp(targets, xi_table[order], sigma_table[order])
    sigma = sigma0.copy()
    scale = max(1.0, abs(X))
    for _ in range(12):
        rows = eval_state(sigma)
        resid = rows[2] - targets
        if np.max(np.abs(resid)) < 1.0e-13 * scale:
            break
        sigma = sigma - resid / (velocity_of(rows[0]) - w)
    rows = eval_state(sigma)
    resid = float(np.max(np.abs(rows[2] - targets)))
    if resid > 1.0e-9 * scale:
        raise RuntimeError(f"profile inversion stalled, residual {resid:.3e}")
    return rows


def wave_profile(
    I2: float,
    w: float,
    n_periods: int = 1,
    samples_per_period: int = 512,
    rel_tol: float = 1.0e-11,
) -> WaveProfile:
    """Smooth relativistic traveling-wave profile of invariant I2, speed w.

    Requires ``w^2 > critical_speed(I2)^2`` and ``I2 > 0``; subcritical
    speeds are rejected (use :func:`wave_branch_data` to inspect the
    multivalued branches of a singular wave).
    """
    if I2 <= 0.0:
        raise ValueError("need a positive wave invariant")
    w_crit = critical_speed(I2)
    if w * w <= w_crit * w_crit:
        raise ValueError(
            f"subcritical speed: |w| = {abs(w):g} <= critical {w_crit:g}"
        )
    C1 = I2 + 2.0
    P_minus, P_plus = rel.turning_momenta(C1)
    T = rel.period(C1)

    def rhs(sigma, y):
        P, E, xi = y
        V = P / math.sqrt(1.0 + P * P)
        return np.asarray([-E, V, V - w])

    traj = integrate_adaptive(
        rhs,
        [0.0, math.sqrt(I2), 0.0],
        (0.0, T),
        rel_tol=rel_tol,
        abs_tol=rel_tol * 1.0e-2,
    )
    dense = traj.dense
    X = abs(float(traj.final_state[2]))

    n_fine = 64 * samples_per_period
    sigma_fine = np.linspace(0.0, T, n_fine)
    xi_fine = dense(sigma_fine)[2]

    def eval_profile(xi):
        xi = np.asarray(xi, dtype=float)
        xi_mod = np.mod(xi, X)
        if w > 0:  # covered branch is xi(sigma) in [-X, 0]
            xi_mod = xi_mod - X
        rows = _invert_monotone(
            (sigma_fine, xi_fine), dense, rel.velocity, w, xi_mod, X
        )
        return rows[0], rows[1]

    n = max(2, int(n_periods) * int(samples_per_period))
    xi = np.linspace(0.0, n_periods * X, n, endpoint=False)
    P, E = eval_profile(xi)
    return WaveProfile(
        model="rel", w=w, I2=I2, X=X, P_plus=P_plus, P_minus=P_minus,
        xi=xi, P=P, E=E, _eval=eval_profile,
    )


def wave_period(I2: float, w: float, abs_tol: float = 1.0e-9) -> float:
    """Spatial period of the relativistic wave from its defining quadrature.

    ``X = 2 |integral (-w + V)/sqrt(I2 - 2 (gamma - 1)) dP|`` between the
    turning momenta (both endpoints square-root singular), normalized
    positive.
    """
    if I2 <= 0.0:
        raise ValueError("need a positive wave invariant")
    w_crit = critical_speed(I2)
    if w * w <= w_crit * w_crit:
        raise ValueError("subcritical speed admits no periodic profile")
    P_minus, P_plus = rel.turning_momenta(I2 + 2.0)

    def integrand(P: float) -> float:
        gamma = math.sqrt(1.0 + P * P)
        rad = I2 - 2.0 * P * P / (1.0 + gamma)
        if rad <= 0.0:
            return 0.0
        return (-w + P / gamma) / math.sqrt(rad)

    value = quad_singular(
        integrand, P_minus, P_plus, singular_ends=(True, True), abs_tol=0.5 * abs_tol
    )
    return 2.0 * abs(value)


def slope_sup(I2: float, w: float, n_scan: int = 200_001) -> tuple[float, float]:
    """Suprema of |dP/dxi| and |dE/dxi| over one profile period.

    The field slope maximum is analytic, ``Vmax / (|w| - Vmax)``; the
    momentum slope maximum is located by a dense scan of the closed form.
    As the speed drops to critical the field slope diverges like
    ``1/(|w| - Vmax)`` while the momentum slope grows only like its square
    root.
    """
    w_crit = critical_speed(I2)
    aw = abs(w)
    if aw <= w_crit:
        raise ValueError("subcritical speed")
    sup_dE = w_crit / (aw - w_crit)
    P_minus, P_plus = rel.turning_momenta(I2 + 2.0)
    P = np.linspace(P_minus, P_plus, n_scan)
    gamma = np.sqrt(1.0 + P * P)
    rad = np.maximum(I2 - 2.0 * P * P / (1.0 + gamma), 0.0)
    sup_dP = float(np.max(np.sqrt(rad) / (aw - np.abs(P) / gamma)))
    return sup_dP, sup_dE


def wave_branch_data(
    I2: float, w: float, n_turns: int = 1, n_samples: int = 4096,
    rel_tol: float = 1.0e-10,
):
    """Parametric (xi, P, E) arrays of the wave curve, any speed.

    For subcritical speeds the map sigma -> xi is no longer monotone and the
    returned curve is multivalued in xi: the singular-wave shape (momentum
    kink, field step) can be inspected directly from these arrays.
    """
    if I2 <= 0.0:
        raise ValueError("need a positive wave invariant")
    C1 = I2 + 2.0
    T = rel.period(C1)

    def rhs(sigma, y):
        P, E, xi = y
        V = P / math.sqrt(1.0 + P * P)
        return np.asarray([-E, V, V - w])

    traj = integrate_adaptive(
        rhs, [0.0, math.sqrt(I2), 0.0], (0.0, n_turns * T), rel_tol=rel_tol,
        abs_tol=rel_tol * 1.0e-2,
    )
    sigma = np.linspace(0.0, n_turns * T, n_samples)
    P, E, xi = traj.dense(sigma)
    return xi, P, E


def wave_profile_nonrel(
    I0: float,
    w: float,
    V_at_0: float = 0.0,
    n_periods: int = 1,
    samples_per_period: int = 512,
) -> WaveProfile:
    """Nonrelativistic traveling-wave profile; spatial period 2 pi |w| exactly.

    The profile satisfies the implicit relation
    ``xi + c = w arcsin(V/I0) + sqrt(I0^2 - V^2)`` whose arcsin sheets are
    handled by the monotone phase parametrization ``V = I0 sin(phi)``,
    ``E = -I0 cos(phi)``, ``xi(phi) = -w (phi - phi0) - I0 (cos phi -
    cos phi0)``; each sample solves the monotone equation by Newton steps.
    """
    if I0 < 0.0:
        raise ValueError("need a nonnegative wave invariant")
    if w * w <= I0 * I0:
        raise ValueError(
            f"subcritical speed: |w| = {abs(w):g} <= critical {I0:g}"
        )
    if abs(V_at_0) > I0:
        raise ValueError("|V(0)| cannot exceed the wave amplitude I0")
    X = TWO_PI * abs(w)
    n = max(2, int(n_periods) * int(samples_per_period))
    xi = np.linspace(0.0, n_periods * X, n, endpoint=False)

    if I0 == 0.0:
        zeros = np.zeros_like(xi)

        def eval_trivial(x):
            x = np.asarray(x, dtype=float)
            return np.zeros_like(x), np.zeros_like(x)

        return WaveProfile(
            model="nonrel", w=w, I2=0.0, X=X, P_plus=0.0, P_minus=0.0,
            xi=xi, P=zeros, E=zeros, _eval=eval_trivial,
        )

    # anchor with E(0) = +sqrt(I0^2 - V0^2): the phase sheet with cos <= 0
    phi0 = math.pi - math.asin(V_at_0 / I0)

    def xi_of_phi(phi):
        return -w * (phi - phi0) - I0 * (np.cos(phi) - math.cos(phi0))

    def eval_profile(x):
        x = np.asarray(x, dtype=float)
        x_mod = np.mod(x, X)
        if w > 0:  # xi(phi) decreases; covered branch is [-X, 0]
            x_mod = x_mod - X
        # Newton on the monotone analytic map (|d xi/d phi| >= |w| - I0)
        phi = phi0 - x_mod / w
        for _ in range(60):
            resid = xi_of_phi(phi) - x_mod
            if np.max(np.abs(resid)) < 1.0e-13 * max(1.0, X):
                break
            phi = phi - resid / (I0 * np.sin(phi) - w)
        resid = float(np.max(np.abs(xi_of_phi(phi) - x_mod)))
        if resid > 1.0e-9 * max(1.0, X):
            raise RuntimeError(f"profile inversion stalled, residual {resid:.3e}")
        V = I0 * np.sin(phi)
        E = -I0 * np.cos(phi)
        return V, E

    V, E = eval_profile(xi)
    return WaveProfile(
        model="nonrel", w=w, I2=I0 * I0, X=X, P_plus=I0, P_minus=-I0,
        xi=xi, P=V, E=E, _eval=eval_profile,
    )
