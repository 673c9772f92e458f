"""Nonrelativistic plane-oscillation model.

Characteristic ODEs for velocity/field pairs, the extended system for their
spatial slopes, the pointwise smoothness criterion on initial slopes, finite
blow-up times in the breaking regime, the (always 2*pi) closed-orbit period,
and the exact linear-in-space solution family.

State layout for the extended characteristic system is
``(rho, V, E, v, e)`` with ``v = dV/drho`` and ``e = dE/drho``; the electron
density along a characteristic is ``N = 1 - e``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import quad_singular
from .verdict import BREAKS, SCOPE_GLOBAL, SMOOTH, Verdict

__all__ = [
    "CharStateNR",
    "LinearSolutionCoeffs",
    "rhs_extended",
    "energy",
    "phase_constant",
    "slope_discriminant",
    "classify_slopes",
    "blowup_time",
    "closed_orbit_period",
    "closed_orbit_period_quadrature",
    "linear_coefficients",
    "linear_solution",
]

TWO_PI = 2.0 * math.pi

CRITERION_NAME = "slope_criterion"


@dataclass(frozen=True)
class CharStateNR:
    """State of one nonrelativistic characteristic with its slopes."""

    rho: float
    V: float
    E: float
    v: float
    e: float

    @classmethod
    def from_array(cls, y) -> "CharStateNR":
        return cls(*map(float, y))

    def to_array(self) -> np.ndarray:
        return np.array([self.rho, self.V, self.E, self.v, self.e])

    @property
    def energy(self) -> float:
        return self.V * self.V + self.E * self.E

    @property
    def phase_constant(self) -> float:
        return phase_constant(self.v, self.e)

    @property
    def density(self) -> float:
        return 1.0 - self.e


def rhs_extended(theta, state):
    """Extended characteristic system: motion plus slope dynamics.

    ``rho' = V, V' = -E, E' = V, v' = -v^2 - e, e' = (1 - e) v``.
    Accepts a single state (5,) or a batch (5, m).
    """
    rho, V, E, v, e = state
    return np.asarray([V, -E, V, -v * v - e, (1.0 - e) * v])


def energy(V, E):
    """Conserved V^2 + E^2 along a characteristic."""
    return V * V + E * E


def slope_discriminant(v0, e0):
    """Discriminant v0^2 + 2 e0 - 1 separating bounded from blowing slopes."""
    return v0 * v0 + 2.0 * e0 - 1.0


def phase_constant(v, e):
    """Orbit constant (v^2 + 2e - 1) / (e - 1)^2 of the slope subsystem.

    Degenerates on the invariant line e = 1; callers should only monitor it
    away from that line.
    """
    return slope_discriminant(v, e) / (e - 1.0) ** 2


def classify_slopes(v0: float, e0: float) -> Verdict:
    """Pointwise smoothness criterion from the initial slopes.

    The solution stays globally smooth (2*pi-periodic) iff
    ``v0^2 + 2 e0 - 1 < 0``; equality already lies on a blow-up orbit and
    counts as breaking.
    """
    delta = slope_discriminant(v0, e0)
    classification = SMOOTH if delta < 0.0 else BREAKS
    return Verdict(
        criterion=CRITERION_NAME,
        classification=classification,
        scope=SCOPE_GLOBAL,
        evidence={"delta": float(delta), "v0": float(v0), "e0": float(e0)},
    )


def _segment_time(s_lo, s_hi, C, singular, abs_tol):
    """Time spent between two phase positions in the s = 1/(1-e) chart.

    In that chart the slope dynamics reduce to
    ``dtheta = ds / sqrt(C + 2 s - s^2)``; turning points are the roots of
    the radicand and carry inverse-square-root singularities.
    """
    if s_hi <= s_lo:
        return 0.0

    def g(s: float) -> float:
        rad = C + s * (2.0 - s)
        return 1.0 / math.sqrt(rad) if rad > 0.0 else 0.0

    return quad_singular(g, s_lo, s_hi, singular_ends=singular, abs_tol=abs_tol)


def blowup_time(e_start: float, v_start: float, abs_tol: float = 1.0e-10) -> float:
    """Finite time at which the slopes of a breaking characteristic diverge.

    Valid for ``v_start^2 + 2 e_start - 1 >= 0``.  On the invariant line
    ``e = 1`` the slope equation reduces to ``v' = -v^2 - 1`` with the
    explicit tangent solution; elsewhere the separated phase-plane integral
    is evaluated in the ``s = 1/(1-e)`` chart, where the infinite-density
    endpoint maps to ``s = 0`` and the only singularities left are the
    square-root turning points.
    """
    delta = slope_discriminant(v_start, e_start)
    if delta < 0.0:
        raise ValueError("slopes lie in the smooth regime (discriminant < 0)")
    if e_start == 1.0:
        # v(theta) = tan(atan(v_start) - theta) -> -inf
        return 0.5 * math.pi + math.atan(v_start)

    C = phase_constant(v_start, e_start)
    s_start = 1.0 / (1.0 - e_start)
    root = math.sqrt(1.0 + C)

    total = 0.0
    if v_start > 0.0:
        # approach the turning point first, then run out to s = 0
        s_turn = 1.0 + root if s_start > 0.0 else 1.0 - root
        lo, hi = min(s_start, s_turn), max(s_start, s_turn)
        total += _segment_time(lo, hi, C, (s_turn < s_start, s_turn > s_start), abs_tol)
        lo, hi = min(0.0, s_turn), max(0.0, s_turn)
        total += _segment_time(lo, hi, C, (True, True), abs_tol)
    else:
        lo, hi = min(0.0, s_start), max(0.0, s_start)
        # s = 0 is regular for C > 0 but singular on the parabola C = 0
        total += _segment_time(lo, hi, C, (True, True), abs_tol)
    return total


def closed_orbit_period(e0: float, v0: float) -> float:
    """Period of a bounded slope orbit; equals 2*pi for every such orbit."""
    if slope_discriminant(v0, e0) >= 0.0:
        raise ValueError("slopes lie in the breaking regime")
    return TWO_PI


def closed_orbit_period_quadrature(
    e0: float, v0: float, abs_tol: float = 1.0e-9
) -> float:
    """Defining period quadrature of a bounded slope orbit.

    Exposed for verification against the constant 2*pi value: integrates
    ``2 de / ((1-e) sqrt(C (e-1)^2 - 2e + 1))`` between the orbit's turning
    points, written in the regular ``s = 1/(1-e)`` chart.
    """
    delta = slope_discriminant(v0, e0)
    if delta >= 0.0:
        raise ValueError("slopes lie in the breaking regime")
    if v0 == 0.0 and e0 == 0.0:
        return TWO_PI  # degenerate center
    C = phase_constant(v0, e0)
    root = math.sqrt(1.0 + C)
    s_lo, s_hi = 1.0 - root, 1.0 + root
    return 2.0 * _segment_time(s_lo, s_hi, C, (True, True), abs_tol=0.5 * abs_tol)


@dataclass(frozen=True)
class LinearSolutionCoeffs:
    """Coefficients of the exact solution linear in the space variable.

    ``V = W(theta) rho + ...``, ``E = D(theta) rho + ...`` solve the model
    exactly when (W, D) follow the slope dynamics; the affine parts are free
    and left unset here.  ``s < 1`` keeps the denominator positive for all
    times (globally smooth coefficients); ``s >= 1`` marks breaking-regime
    coefficients.
    """

    alpha: float  # D(0)
    beta: float   # W(0)
    s: float
    theta0: float

    @property
    def breaking(self) -> bool:
        return self.s >= 1.0

    def W(self, theta):
        if self.s == 0.0:
            return np.zeros_like(np.asarray(theta, dtype=float))
        phase = np.asarray(theta, dtype=float) + self.theta0
        return self.s * np.cos(phase) / (1.0 + self.s * np.sin(phase))

    def D(self, theta):
        if self.s == 0.0:
            return np.zeros_like(np.asarray(theta, dtype=float))
        phase = np.asarray(theta, dtype=float) + self.theta0
        return self.s * np.sin(phase) / (1.0 + self.s * np.sin(phase))


def linear_coefficients(alpha: float, beta: float) -> LinearSolutionCoeffs:
    """Build the coefficient pair from the initial slopes alpha = D(0), beta = W(0)."""
    if alpha == 1.0:
        raise ValueError("alpha = 1 puts the data on the degenerate line e = 1")
    r = math.hypot(alpha, beta)
    if r == 0.0:
        return LinearSolutionCoeffs(alpha=0.0, beta=0.0, s=0.0, theta0=0.0)
    s = r / (1.0 - alpha)
    theta0 = math.atan2(alpha, beta)  # cos = beta/r, sin = alpha/r
    return LinearSolutionCoeffs(alpha=alpha, beta=beta, s=s, theta0=theta0)


def linear_solution(alpha: float, beta: float, theta):
    """Evaluate (W(theta), D(theta)) of the linear solution family."""
    coeffs = linear_coefficients(alpha, beta)
    return coeffs.W(theta), coeffs.D(theta)
