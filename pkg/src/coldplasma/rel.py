"""Relativistic plane-oscillation model.

Characteristic ODEs for momentum/field pairs, the conserved oscillation
invariant ``C1 = 2 sqrt(1+P^2) + E^2``, the amplitude-dependent period, the
smoothness criterion for coupled (constant-invariant) initial data, the
first-period sufficient conditions for general data, and the two-sided
closed-form bounds on the inverse momentum slope.

Extended characteristic state layout: ``(rho, P, E, p, e)`` with
``p = dP/drho``, ``e = dE/drho``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import integrate_adaptive, quad_singular
from .verdict import (
    BREAKS,
    INDETERMINATE,
    SCOPE_FIRST_PERIOD,
    SCOPE_GLOBAL,
    SMOOTH,
    Verdict,
)

__all__ = [
    "CharStateR",
    "lorentz_factor",
    "velocity",
    "rhs_characteristic",
    "rhs_extended",
    "first_integral",
    "turning_momenta",
    "period",
    "measured_period",
    "max_orbit_speed",
    "coupled_invariant",
    "coupled_field_slope",
    "coupled_slope",
    "classify_coupled",
    "classify_first_period",
    "hill_coefficient_bounds",
    "inverse_slope_bounds",
]

TWO_PI = 2.0 * math.pi

COUPLED_CRITERION = "coupled_data_criterion"
FIRST_PERIOD_CRITERION = "first_period_criterion"


@dataclass(frozen=True)
class CharStateR:
    """State of one relativistic characteristic with its slopes."""

    rho: float
    P: float
    E: float
    p: float
    e: float

    @classmethod
    def from_array(cls, y) -> "CharStateR":
        return cls(*map(float, y))

    def to_array(self) -> np.ndarray:
        return np.array([self.rho, self.P, self.E, self.p, self.e])

    @property
    def gamma(self) -> float:
        return math.sqrt(1.0 + self.P * self.P)

    @property
    def invariant(self) -> float:
        return 2.0 * self.gamma + self.E * self.E

    @property
    def velocity(self) -> float:
        return self.P / self.gamma

    @property
    def density(self) -> float:
        return 1.0 - self.e


def lorentz_factor(P):
    """gamma = sqrt(1 + P^2)."""
    return np.sqrt(1.0 + np.square(P))


def velocity(P):
    """V = P / sqrt(1 + P^2), always inside (-1, 1)."""
    return P / np.sqrt(1.0 + np.square(P))


def rhs_characteristic(theta, state):
    """Momentum/field oscillator along a characteristic: (P, E) pair."""
    P, E = state
    return np.asarray([-E, P / np.sqrt(1.0 + P * P)])


def rhs_extended(theta, state):
    """Extended characteristic system ``(rho, P, E, p, e)``.

    ``rho' = V, P' = -E, E' = V, p' = -e - p^2/gamma^3,
    e' = (1 - e) p / gamma^3``.
    """
    rho, P, E, p, e = state
    gamma2 = 1.0 + P * P
    V = P / np.sqrt(gamma2)
    inv_g3 = gamma2 ** -1.5
    return np.asarray([V, -E, V, -e - p * p * inv_g3, (1.0 - e) * p * inv_g3])


def first_integral(P, E):
    """Conserved 2 sqrt(1+P^2) + E^2 >= 2 along a characteristic."""
    return 2.0 * np.sqrt(1.0 + np.square(P)) + np.square(E)


def turning_momenta(C1: float) -> tuple[float, float]:
    """Momentum turning values (P-, P+) of an orbit with invariant C1."""
    if C1 < 2.0:
        raise ValueError("the oscillation invariant satisfies C1 >= 2")
    half_span = 0.5 * math.sqrt(C1 * C1 - 4.0)
    return -half_span, half_span


def period(C1: float, abs_tol: float = 1.0e-9) -> float:
    """Oscillation period of a characteristic with invariant ``C1``.

    Evaluates ``2 * integral dP / sqrt(C1 - 2 sqrt(1+P^2))`` between the
    turning momenta (inverse-square-root singular at both ends).  Equals
    2*pi exactly at the equilibrium value ``C1 = 2`` and grows with C1.
    """
    if C1 < 2.0:
        raise ValueError("the oscillation invariant satisfies C1 >= 2")
    if C1 == 2.0:
        return TWO_PI
    P_minus, P_plus = turning_momenta(C1)

    def integrand(P: float) -> float:
        # (C1 - 2) - 2 (gamma - 1) in cancellation-free form
        rad = (C1 - 2.0) - 2.0 * P * P / (1.0 + math.sqrt(1.0 + P * P))
        return 1.0 / math.sqrt(rad) if rad > 0.0 else 0.0

    return 2.0 * quad_singular(
        integrand, P_minus, P_plus, singular_ends=(True, True), abs_tol=0.5 * abs_tol
    )


def measured_period(P0: float, E0: float, rel_tol: float = 1.0e-12) -> float:
    """Orbit period measured by timing field zero crossings along the ODE.

    Independent oracle for :func:`period`: integrates the (P, E) pair and
    returns the time between the first and third E = 0 crossings (one full
    revolution).
    """
    C1 = float(first_integral(P0, E0))
    if C1 <= 2.0:
        raise ValueError("degenerate equilibrium orbit")
    horizon = 3.5 * period(C1, abs_tol=1.0e-8)
    traj = integrate_adaptive(
        rhs_characteristic,
        [P0, E0],
        (0.0, horizon),
        rel_tol=rel_tol,
        events=[lambda th, y: y[1]],
        event_labels=["E_zero"],
    )
    crossings = [t for t, _ in traj.events]
    if len(crossings) < 3:
        raise RuntimeError("did not observe a full revolution")
    return crossings[2] - crossings[0]


def max_orbit_speed(C1: float) -> float:
    """Largest |V| reachable on an orbit with invariant C1: sqrt(C1^2-4)/C1."""
    if C1 < 2.0:
        raise ValueError("the oscillation invariant satisfies C1 >= 2")
    return math.sqrt(C1 * C1 - 4.0) / C1


def coupled_invariant(P0: float, E0: float, P0p: float) -> float:
    """Per-point constant ``E0/P0' + P0/gamma0`` of coupled initial data."""
    if P0p == 0.0:
        raise ValueError("undefined for vanishing momentum slope")
    return E0 / P0p + P0 / math.sqrt(1.0 + P0 * P0)


def coupled_field_slope(P0: float, E0: float, p0: float) -> float:
    """Field slope e0 forced by constancy of the oscillation invariant.

    Differentiating ``2 sqrt(1+P0^2) + E0^2 = const`` in rho gives
    ``e0 = -p0 P0 / (E0 gamma0)``; requires ``E0 != 0``.
    """
    if E0 == 0.0:
        raise ValueError("field slope undetermined where E0 = 0")
    return -p0 * P0 / (E0 * math.sqrt(1.0 + P0 * P0))


def coupled_slope(P: float, C1: float, C2: float, branch_sign: int) -> float:
    """Closed-form momentum slope along a coupled characteristic.

    ``p(P) = E(P) gamma / (C2 gamma - P)`` with
    ``E(P) = branch_sign * sqrt(C1 - 2 gamma)``; the denominator vanishing
    is exactly the breaking locus.
    """
    if C1 < 2.0:
        raise ValueError("the oscillation invariant satisfies C1 >= 2")
    gamma = math.sqrt(1.0 + P * P)
    rad = C1 - 2.0 * gamma
    if rad < -1.0e-12 * C1:
        raise ValueError("momentum outside the orbit: P^2 > C1^2/4 - 1")
    E = float(branch_sign) * math.sqrt(max(rad, 0.0))
    denom = C2 * gamma - P
    if denom == 0.0:
        raise ZeroDivisionError("breaking locus: C2 gamma = P")
    return E * gamma / denom


def classify_coupled(P0: float, E0: float, P0p: float) -> Verdict:
    """Smoothness criterion for data with a spatially constant invariant.

    Applies only when ``2 sqrt(1+P0^2) + E0^2`` is the same at every point
    (the caller checks this across the profile).  The solution stays smooth
    for all time iff the per-point constant falls outside
    ``[-M, M]`` with ``M = sqrt(C1^2-4)/C1`` (the maximal orbit speed);
    inside that band the slope denominator vanishes at a reachable momentum.
    """
    C1 = float(first_integral(P0, E0))
    if C1 <= 2.0:
        raise ValueError("degenerate orbit: coupled criterion needs C1 > 2")
    M = max_orbit_speed(C1)
    if P0p == 0.0:
        return Verdict(
            criterion=COUPLED_CRITERION,
            classification=INDETERMINATE,
            scope=SCOPE_GLOBAL,
            evidence={"C1": C1, "max_orbit_speed": M, "reason": "P0' = 0"},
        )
    C2 = coupled_invariant(P0, E0, P0p)
    breaks = -M <= C2 <= M
    return Verdict(
        criterion=COUPLED_CRITERION,
        classification=BREAKS if breaks else SMOOTH,
        scope=SCOPE_GLOBAL,
        evidence={"C1": C1, "C2": C2, "max_orbit_speed": M},
    )


def hill_coefficient_bounds(C1: float) -> tuple[float, float]:
    """Range ``[8/C1^3, 1]`` of ``gamma^-3`` along an orbit with invariant C1."""
    if C1 < 2.0:
        raise ValueError("the oscillation invariant satisfies C1 >= 2")
    return 8.0 / C1 ** 3, 1.0


def classify_first_period(P0: float, E0: float, p0: float, e0: float) -> Verdict:
    """Sufficient first-period conditions for general (uncoupled) data.

    With ``K- = 8/C1^3``:
    breaks within one period when ``K- p0^2 + 2 e0 - 1 >= 0``; stays smooth
    through at least one full period when ``p0^2 + 2 e0 - 1 < 0`` and
    ``p0 < 0``; otherwise the test is silent for this sample.
    """
    C1 = float(first_integral(P0, E0))
    K_lower, _ = hill_coefficient_bounds(C1)
    break_margin = K_lower * p0 * p0 + 2.0 * e0 - 1.0
    smooth_margin = p0 * p0 + 2.0 * e0 - 1.0
    evidence = {
        "C1": C1,
        "K_lower": K_lower,
        "break_margin": break_margin,
        "smooth_margin": smooth_margin,
        "p0": p0,
    }
    if break_margin >= 0.0:
        classification = BREAKS
    elif smooth_margin < 0.0 and p0 < 0.0:
        classification = SMOOTH
    else:
        classification = INDETERMINATE
    return Verdict(
        criterion=FIRST_PERIOD_CRITERION,
        classification=classification,
        scope=SCOPE_FIRST_PERIOD,
        evidence=evidence,
    )


def inverse_slope_bounds(
    theta: float, u0: float, lambda0: float, K_lower: float
) -> tuple[float, float]:
    """Two-sided closed-form bounds on the inverse momentum slope ``1/p``.

    Obtained by freezing the periodic Hill coefficient at its extreme values
    ``K_lower`` and 1; each bound is the inverse slope of the corresponding
    constant-coefficient dynamics and is valid up to its own tangent
    singularity.  Diagnostic only: the two-sided enclosure is asserted
    empirically for ``p0 < 0``, ``e0 < 1`` trajectories, not proved here.
    """
    if not 0.0 < K_lower <= 1.0:
        raise ValueError("K_lower must lie in (0, 1]")

    def frozen_inverse_slope(K: float) -> float:
        root_K = math.sqrt(K)
        arg = root_K * theta + math.atan(u0 / root_K)
        if arg >= 0.5 * math.pi:
            raise ValueError("bound undefined beyond its tangent singularity")
        tan_arg = math.tan(arg)
        return root_K * tan_arg + lambda0 * math.sqrt(1.0 + tan_arg * tan_arg) / math.sqrt(
            u0 * u0 / K + 1.0
        )

    return frozen_inverse_slope(K_lower), frozen_inverse_slope(1.0)
