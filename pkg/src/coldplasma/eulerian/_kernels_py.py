"""NumPy stepping kernels for the grid solver.

Pure-Python fallback with exactly the same arithmetic as the compiled
module (``_kernels.pyx``); the two are kept in lockstep operation for
operation so either backend produces matching fields.

One step = one classic four-stage Runge-Kutta step of the advective system
with source terms, using fourth-order central differences in space
(fourth-order one-sided closures beside the held boundary nodes), followed
by an eighth-order low-pass filter that damps only near-grid wavelengths.
All stencils are symmetric, so the update commutes exactly with the parity
map: odd data on a symmetric grid stays odd to the last bit.
"""
from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

#: default strength of the eighth-order filter (fraction of the 2h mode
#: removed per step); keeps the repeatedly collapsing density spikes stable
#: over many oscillation periods while leaving resolved scales untouched
DEFAULT_FILTER = 0.01


def _deriv4(f: np.ndarray, h: float, periodic: bool) -> np.ndarray:
    inv12h = 1.0 / (12.0 * h)
    if periodic:
        return (
            np.roll(f, 2) - 8.0 * np.roll(f, 1) + 8.0 * np.roll(f, -1) - np.roll(f, -2)
        ) * inv12h
    d = np.empty_like(f)
    d[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) * inv12h
    # boundary nodes are held (Dirichlet); their slots are never used
    d[0] = 0.0
    d[-1] = 0.0
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * inv12h
    d[-2] = (3.0 * f[-1] + 10.0 * f[-2] - 18.0 * f[-3] + 6.0 * f[-4] - f[-5]) * inv12h
    return d


def _rhs(P, E, h, relativistic, periodic):
    if relativistic:
        V = P / np.sqrt(1.0 + P * P)
    else:
        V = P
    rP = -V * _deriv4(P, h, periodic) - E
    rE = -V * _deriv4(E, h, periodic) + V
    if not periodic:
        rP[0] = 0.0
        rP[-1] = 0.0
        rE[0] = 0.0
        rE[-1] = 0.0
    return rP, rE


def _filter8(U: np.ndarray, sigma: float, periodic: bool) -> None:
    if sigma == 0.0:
        return
    c = sigma / 256.0
    if periodic:
        d = (
            np.roll(U, 4)
            - 8.0 * np.roll(U, 3)
            + 28.0 * np.roll(U, 2)
            - 56.0 * np.roll(U, 1)
            + 70.0 * U
            - 56.0 * np.roll(U, -1)
            + 28.0 * np.roll(U, -2)
            - 8.0 * np.roll(U, -3)
            + np.roll(U, -4)
        )
        U -= c * d
    else:
        d = (
            U[:-8]
            - 8.0 * U[1:-7]
            + 28.0 * U[2:-6]
            - 56.0 * U[3:-5]
            + 70.0 * U[4:-4]
            - 56.0 * U[5:-3]
            + 28.0 * U[6:-2]
            - 8.0 * U[7:-1]
            + U[8:]
        )
        U[4:-4] -= c * d


def advance(
    P: np.ndarray,
    E: np.ndarray,
    h: float,
    dt: float,
    relativistic: bool,
    periodic: bool,
    filter_strength: float = DEFAULT_FILTER,
) -> None:
    """Advance (P, E) in place by one Runge-Kutta step plus filtering."""
    half = 0.5 * dt
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        k1P, k1E = _rhs(P, E, h, relativistic, periodic)
        k2P, k2E = _rhs(P + half * k1P, E + half * k1E, h, relativistic, periodic)
        k3P, k3E = _rhs(P + half * k2P, E + half * k2E, h, relativistic, periodic)
        k4P, k4E = _rhs(P + dt * k3P, E + dt * k3E, h, relativistic, periodic)
        sixth = dt / 6.0
        P += sixth * (k1P + 2.0 * k2P + 2.0 * k3P + k4P)
        E += sixth * (k1E + 2.0 * k2E + 2.0 * k3E + k4E)
        _filter8(P, filter_strength, periodic)
        _filter8(E, filter_strength, periodic)
