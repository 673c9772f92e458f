"""Hill-equation route to the breaking classification.

The slope dynamics along a relativistic characteristic linearize, after the
substitution ``u = -z'/z``, into the Hill equation ``z'' + K(theta) z = 0``
with the periodic coefficient ``K = gamma^-3``.  The solution's slopes blow
up exactly when ``z'`` first meets ``lambda0 = (1 - e0)/p0``; if no such
moment exists the solution stays smooth forever.  Floquet (monodromy)
analysis decides whether a crossing missed within a finite horizon is still
guaranteed eventually, and the small-amplitude limit reduces to a Mathieu
equation with an explicit discriminant asymptotic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import rel
from .numerics import integrate_adaptive
from .verdict import (
    BREAKS,
    INDETERMINATE,
    SCOPE_HORIZON,
    SMOOTH,
    Verdict,
)

__all__ = [
    "HillProblem",
    "FloquetData",
    "build_K",
    "hill_problem_from_slopes",
    "hill_solution",
    "classify_hill",
    "floquet_discriminant",
    "mathieu_coefficient",
    "mathieu_floquet",
    "mathieu_discriminant_smallamp",
]

HILL_CRITERION = "hill_criterion"

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class HillProblem:
    """One Hill classification problem.

    ``K`` is the periodic coefficient (vectorized callable), ``T`` a period
    of ``K`` (the orbit period as built by :func:`build_K`; the coefficient
    actually repeats every half orbit).  ``u0 = e0/p0`` and
    ``lambda0 = (1-e0)/p0`` encode the initial slopes; both require a
    nonvanishing momentum slope.  ``horizon`` bounds the crossing search
    (``100 T`` when omitted).
    """

    K: Callable[[np.ndarray], np.ndarray]
    T: float
    u0: float
    lambda0: float
    horizon: float | None = None
    K_lower: float | None = None


@dataclass(frozen=True)
class FloquetData:
    """Monodromy summary of one Hill coefficient over one period.

    ``discriminant`` is the half-trace of the monodromy matrix;
    ``|discriminant| > 1`` means unbounded solutions.  ``mu`` is the growth
    exponent in the normalization ``cosh(mu pi) = |discriminant|`` (None in
    the bounded regime).  The Mathieu fields are filled only when the data
    comes from the small-amplitude reduction.
    """

    discriminant: float
    mu: float | None
    monodromy: np.ndarray
    wronskian_error: float
    a: float | None = None
    b: float | None = None
    epsilon: float | None = None

    @property
    def unstable(self) -> bool:
        return abs(self.discriminant) > 1.0


def build_K(P0: float, E0: float, rel_tol: float = 1.0e-12):
    """Periodic Hill coefficient along the characteristic through (P0, E0).

    Integrates the momentum/field oscillator over one period and returns
    ``(K, T)`` where ``K(theta) = (1 + P(theta)^2)^(-3/2)`` evaluated through
    dense output and wrapped periodically, and ``T`` is the orbit period.
    At the equilibrium invariant value the coefficient is the constant 1
    with ``T = 2 pi``.
    """
    C1 = float(rel.first_integral(P0, E0))
    if C1 <= 2.0 + 1.0e-14:

        def K_const(theta):
            return np.ones_like(np.asarray(theta, dtype=float))

        return K_const, TWO_PI

    T = rel.period(C1)
    traj = integrate_adaptive(
        rel.rhs_characteristic, [P0, E0], (0.0, T), rel_tol=rel_tol,
        abs_tol=rel_tol * 1e-2,
    )
    dense = traj.dense

    def K(theta):
        th = np.mod(np.asarray(theta, dtype=float), T)
        P = dense(th)[0]
        return (1.0 + P * P) ** -1.5

    return K, T


def hill_problem_from_slopes(
    P0: float, E0: float, p0: float, e0: float, horizon: float | None = None,
    rel_tol: float = 1.0e-12,
) -> HillProblem:
    """Assemble the Hill problem for one initial-data sample."""
    if p0 == 0.0:
        raise ValueError("slope ratios undefined for vanishing momentum slope")
    K, T = build_K(P0, E0, rel_tol=rel_tol)
    C1 = float(rel.first_integral(P0, E0))
    return HillProblem(
        K=K, T=T, u0=e0 / p0, lambda0=(1.0 - e0) / p0, horizon=horizon,
        K_lower=8.0 / C1 ** 3,
    )


def _hill_rhs(K):
    def rhs(theta, y):
        z, dz = y
        return np.asarray([dz, -K(theta) * z])

    return rhs


def hill_solution(problem: HillProblem, rel_tol: float = 1.0e-10):
    """Integrate the Hill problem over its horizon.

    Returns the trajectory of ``(z, z')`` with the slope-crossing event
    ``z' = lambda0`` located (label ``"slope_crossing"``).
    """
    horizon = problem.horizon if problem.horizon is not None else 100.0 * problem.T
    if horizon <= 0.0:
        raise ValueError("horizon must be positive")
    lam = problem.lambda0
    return integrate_adaptive(
        _hill_rhs(problem.K),
        [1.0, -problem.u0],
        (0.0, horizon),
        rel_tol=rel_tol,
        abs_tol=rel_tol * 1.0e-2,
        events=[lambda th, y: y[1] - lam],
        event_labels=["slope_crossing"],
        # adaptive steps resolve each oscillation with hundreds of nodes, so
        # 8 dense-output samples per step catches even shallow crossings
        event_refine=8,
    )


def classify_hill(
    problem: HillProblem,
    rel_tol: float = 1.0e-10,
    disc_margin: float = 1.0e-9,
) -> Verdict:
    """Search for the first ``z' = lambda0`` crossing of the Hill solution.

    Found within the horizon: breaks at that moment.  Not found: the
    monodromy matrix decides.  An unstable Floquet discriminant with the
    (always oscillatory, K > 0) solution means ``z'`` eventually reaches any
    value, so the crossing is guaranteed beyond the horizon; a strictly
    stable one means bounded quasi-periodic slopes (smooth); a borderline
    discriminant with monodromy indistinguishable from +-identity is the
    bounded periodic case (smooth); any other borderline case is reported
    indeterminate with the measured discriminant.
    """
    horizon = problem.horizon if problem.horizon is not None else 100.0 * problem.T
    traj = hill_solution(problem, rel_tol=rel_tol)
    hit = traj.first_event("slope_crossing")
    if hit is not None:
        return Verdict(
            criterion=HILL_CRITERION,
            classification=BREAKS,
            scope=SCOPE_HORIZON,
            theta_star=hit[0],
            evidence={
                "lambda0": problem.lambda0, "u0": problem.u0, "horizon": horizon,
            },
        )

    flo = floquet_discriminant(problem.K, problem.T)
    evidence = {
        "lambda0": problem.lambda0,
        "u0": problem.u0,
        "horizon": horizon,
        "discriminant": flo.discriminant,
        "crossing_located": False,
    }
    if abs(flo.discriminant) > 1.0 + disc_margin:
        evidence["eventually_guaranteed"] = True
        return Verdict(
            criterion=HILL_CRITERION, classification=BREAKS,
            scope=SCOPE_HORIZON, evidence=evidence,
        )
    if abs(flo.discriminant) < 1.0 - disc_margin:
        return Verdict(
            criterion=HILL_CRITERION, classification=SMOOTH,
            scope=SCOPE_HORIZON, evidence=evidence,
        )
    # |disc| == 1 within numerical resolution: bounded iff the monodromy is
    # (+-) identity; a Jordan block would still grow linearly.
    sign = 1.0 if flo.discriminant >= 0.0 else -1.0
    defect = float(np.max(np.abs(flo.monodromy - sign * np.eye(2))))
    evidence["monodromy_identity_defect"] = defect
    if defect < 1.0e-8:
        return Verdict(
            criterion=HILL_CRITERION, classification=SMOOTH,
            scope=SCOPE_HORIZON, evidence=evidence,
        )
    return Verdict(
        criterion=HILL_CRITERION, classification=INDETERMINATE,
        scope=SCOPE_HORIZON, evidence=evidence,
    )


def floquet_discriminant(
    K: Callable, T: float, rel_tol: float = 1.0e-12
) -> FloquetData:
    """Monodromy analysis of ``z'' + K(theta) z = 0`` over one period ``T``.

    Integrates the fundamental pair (z1 with (1, 0), z2 with (0, 1)) in one
    pass and returns the half-trace of the monodromy matrix.  With no
    first-derivative term the Wronskian must stay exactly 1; its defect at
    ``T`` is attached as an accuracy witness.
    """
    if not (math.isfinite(T) and T > 0.0):
        raise ValueError("period must be positive and finite")

    def rhs(theta, y):
        k = K(theta)
        if not np.all(np.isfinite(k)):
            raise ValueError("non-finite Hill coefficient sample")
        return np.asarray([y[1], -k * y[0], y[3], -k * y[2]])

    traj = integrate_adaptive(
        rhs, [1.0, 0.0, 0.0, 1.0], (0.0, T), rel_tol=rel_tol,
        abs_tol=rel_tol * 1.0e-2,
    )
    z1, dz1, z2, dz2 = traj.final_state
    monodromy = np.array([[z1, z2], [dz1, dz2]])
    disc = 0.5 * (z1 + dz2)
    wronskian_error = abs(z1 * dz2 - z2 * dz1 - 1.0)
    mu = math.acosh(abs(disc)) / math.pi if abs(disc) > 1.0 else None
    return FloquetData(
        discriminant=float(disc),
        mu=mu,
        monodromy=monodromy,
        wronskian_error=float(wronskian_error),
    )


def mathieu_coefficient(epsilon: float):
    """Small-amplitude Hill coefficient ``a - 2 b cos(2 theta)``, period pi.

    For an oscillation of momentum amplitude ``epsilon`` the coefficient
    expands as ``a = 1 - (3/4) eps^2``, ``b = -(3/8) eps^2`` with an
    O(eps^4) remainder dropped.
    """
    a = 1.0 - 0.75 * epsilon * epsilon
    b = -0.375 * epsilon * epsilon

    def K(theta):
        return a - 2.0 * b * np.cos(2.0 * np.asarray(theta, dtype=float))

    return K, math.pi, a, b


def mathieu_floquet(epsilon: float, rel_tol: float = 1.0e-12) -> FloquetData:
    """Floquet data of the small-amplitude Mathieu reduction."""
    K, T, a, b = mathieu_coefficient(epsilon)
    flo = floquet_discriminant(K, T, rel_tol=rel_tol)
    return FloquetData(
        discriminant=flo.discriminant,
        mu=flo.mu,
        monodromy=flo.monodromy,
        wronskian_error=flo.wronskian_error,
        a=a,
        b=b,
        epsilon=epsilon,
    )


def mathieu_discriminant_smallamp(epsilon: float) -> float:
    """Classical small-amplitude asymptotic ``-1 - (27/2048) pi^2 eps^6``.

    Strictly below -1 for every positive amplitude.  Reference value only:
    direct monodromy integration of the small-amplitude coefficient lands
    on the other side of -1 (the data sits on a resonance-tongue edge where
    this asymptotic is non-uniform; the exact orbit coefficient is
    parabolic), so the test suite treats the discrepancy explicitly rather
    than asserting agreement.
    """
    if not 0.0 < epsilon <= 0.5:
        raise ValueError("asymptotic stated for amplitudes in (0, 0.5]")
    return -1.0 - (27.0 / 2048.0) * math.pi ** 2 * epsilon ** 6
