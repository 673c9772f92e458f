"""Method-of-characteristics breaking certification.

Pre-breaking the grid solution and the characteristic ODEs describe the
same flow, so the extended characteristic system doubles as an exact oracle
for the first loss of smoothness: the earliest slope blow-up over all foot
points.  The nonrelativistic model has a closed quadrature for the blow-up
time; the relativistic one is integrated with a blow-up guard and the foot
point minimized by a coarse scan plus local refinement (the blow-up-time
landscape develops narrow valleys, one per oscillation period).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import nonrel, rel
from .numerics import integrate_adaptive

__all__ = ["BreakingCertificate", "characteristic_blowup_time", "first_breaking"]


@dataclass(frozen=True)
class BreakingCertificate:
    """Earliest certified slope blow-up over the scanned foot points."""

    theta: float
    rho0: float


def characteristic_blowup_time(
    model: str,
    P0: float,
    E0: float,
    p0: float,
    e0: float,
    theta_max: float,
    rel_tol: float = 1.0e-9,
    guard: float = 1.0e10,
) -> float | None:
    """Blow-up time of one extended characteristic, or None within horizon."""
    rhs = rel.rhs_extended if model == "rel" else nonrel.rhs_extended
    traj = integrate_adaptive(
        rhs,
        [0.0, P0, E0, p0, e0],
        (0.0, theta_max),
        rel_tol=rel_tol,
        blowup_guard=guard,
    )
    return traj.final_time if traj.terminated_early else None


def first_breaking(
    profile,
    model: str,
    rho_span: tuple[float, float],
    theta_max: float,
    coarse_step: float = 0.15,
    refine_rounds: int = 2,
    rel_tol: float = 1.0e-8,
) -> BreakingCertificate | None:
    """Earliest breaking over foot points in ``rho_span``.

    ``profile`` provides values and slopes via ``samples(rho)``.  The
    nonrelativistic case uses the exact pointwise quadrature; the
    relativistic case scans the ODE blow-up time on a coarse foot grid and
    refines around every coarse local minimum (valleys are narrower than an
    oscillation period's footprint).
    """
    lo, hi = float(rho_span[0]), float(rho_span[1])
    if not hi > lo:
        raise ValueError("need a nonempty foot-point span")

    if model == "nonrel":
        n = max(32, int(math.ceil((hi - lo) / coarse_step)) * 8 + 1)
        s = profile.samples(np.linspace(lo, hi, n))
        best: BreakingCertificate | None = None
        for r0, v0, e0 in zip(s.rho, s.dP0, s.dE0):
            if nonrel.slope_discriminant(v0, e0) < 0.0:
                continue
            theta = nonrel.blowup_time(float(e0), float(v0))
            if theta <= theta_max and (best is None or theta < best.theta):
                best = BreakingCertificate(theta=theta, rho0=float(r0))
        return best

    if model != "rel":
        raise ValueError("model must be 'rel' or 'nonrel'")

    # scan beyond theta_max: the valley around each breaking episode is
    # flanked by foot points that break roughly one period later, and the
    # refinement needs those flanks to localize the minimum
    probe = profile.samples(np.linspace(lo, hi, 64))
    C1_max = float(np.max(rel.first_integral(probe.P0, probe.E0)))
    horizon = theta_max + 2.0 * rel.period(C1_max)

    def blow_time(r0: float) -> float:
        s = profile.samples(np.asarray([r0]))
        theta = characteristic_blowup_time(
            "rel", float(s.P0[0]), float(s.E0[0]), float(s.dP0[0]),
            float(s.dE0[0]), horizon, rel_tol=rel_tol,
        )
        return theta if theta is not None else math.inf

    grid = np.arange(lo, hi + 0.5 * coarse_step, coarse_step)
    times = np.array([blow_time(r) for r in grid])

    step = coarse_step
    for _ in range(refine_rounds):
        finite = np.isfinite(times)
        if not np.any(finite):
            return None
        # refine around every local minimum of the current landscape
        candidates: list[float] = []
        for k in np.nonzero(finite)[0]:
            left = times[k - 1] if k > 0 else math.inf
            right = times[k + 1] if k + 1 < times.size else math.inf
            if times[k] <= left and times[k] <= right:
                candidates.append(grid[k])
        step /= 8.0
        extra = []
        for center in candidates:
            extra.extend(
                center + j * step for j in range(-7, 8) if lo <= center + j * step <= hi
            )
        extra = sorted(set(np.round(extra, 12)) - set(np.round(grid, 12)))
        if extra:
            new_times = np.array([blow_time(r) for r in extra])
            grid = np.concatenate([grid, extra])
            times = np.concatenate([times, new_times])
            order = np.argsort(grid)
            grid, times = grid[order], times[order]

    k = int(np.argmin(times))
    if not np.isfinite(times[k]) or times[k] > theta_max:
        return None
    return BreakingCertificate(theta=float(times[k]), rho0=float(grid[k]))
