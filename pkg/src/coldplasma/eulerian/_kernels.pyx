# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled stepping kernels for the grid solver.

Mirrors ``_kernels_py`` operation for operation (same stencils, same
arithmetic order, no FP contraction) so the two backends produce matching
fields; this one just runs the hot loop in C.
"""
from libc.math cimport sqrt

import numpy as np

BACKEND_NAME = "cython"

DEFAULT_FILTER = 0.01


cdef void _deriv4(const double[::1] f, double h, bint periodic,
                  double[::1] d) noexcept nogil:
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t i
    cdef double inv12h = 1.0 / (12.0 * h)
    if periodic:
        # "+ n" keeps the C remainder nonnegative (cdivision semantics)
        for i in range(n):
            d[i] = (f[(i + n - 2) % n] - 8.0 * f[(i + n - 1) % n]
                    + 8.0 * f[(i + 1) % n] - f[(i + 2) % n]) * inv12h
        return
    for i in range(2, n - 2):
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * inv12h
    d[0] = 0.0
    d[n - 1] = 0.0
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * inv12h
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3]
                + 6.0 * f[n - 4] - f[n - 5]) * inv12h


cdef void _rhs(const double[::1] P, const double[::1] E, double h,
               bint relativistic, bint periodic,
               double[::1] rP, double[::1] rE,
               double[::1] dP, double[::1] dE) noexcept nogil:
    cdef Py_ssize_t n = P.shape[0]
    cdef Py_ssize_t i
    cdef double V
    _deriv4(P, h, periodic, dP)
    _deriv4(E, h, periodic, dE)
    for i in range(n):
        if relativistic:
            V = P[i] / sqrt(1.0 + P[i] * P[i])
        else:
            V = P[i]
        rP[i] = -V * dP[i] - E[i]
        rE[i] = -V * dE[i] + V
    if not periodic:
        rP[0] = 0.0
        rP[n - 1] = 0.0
        rE[0] = 0.0
        rE[n - 1] = 0.0


cdef void _filter8(double[::1] U, double sigma, bint periodic,
                   double[::1] scratch) noexcept nogil:
    cdef Py_ssize_t n = U.shape[0]
    cdef Py_ssize_t i
    cdef double c = sigma / 256.0
    if sigma == 0.0:
        return
    if periodic:
        for i in range(n):
            scratch[i] = (U[(i + n - 4) % n] - 8.0 * U[(i + n - 3) % n]
                          + 28.0 * U[(i + n - 2) % n] - 56.0 * U[(i + n - 1) % n]
                          + 70.0 * U[i]
                          - 56.0 * U[(i + 1) % n] + 28.0 * U[(i + 2) % n]
                          - 8.0 * U[(i + 3) % n] + U[(i + 4) % n])
        for i in range(n):
            U[i] = U[i] - c * scratch[i]
        return
    for i in range(4, n - 4):
        scratch[i] = (U[i - 4] - 8.0 * U[i - 3] + 28.0 * U[i - 2]
                      - 56.0 * U[i - 1] + 70.0 * U[i] - 56.0 * U[i + 1]
                      + 28.0 * U[i + 2] - 8.0 * U[i + 3] + U[i + 4])
    for i in range(4, n - 4):
        U[i] = U[i] - c * scratch[i]


def advance(double[::1] P, double[::1] E, double h, double dt,
            bint relativistic, bint periodic,
            double filter_strength=DEFAULT_FILTER):
    """Advance (P, E) in place by one Runge-Kutta step plus filtering."""
    cdef Py_ssize_t n = P.shape[0]
    cdef Py_ssize_t i
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0

    buf = np.empty((12, n), dtype=np.float64)
    cdef double[:, ::1] w = buf
    cdef double[::1] k1P = w[0], k1E = w[1], k2P = w[2], k2E = w[3]
    cdef double[::1] k3P = w[4], k3E = w[5], k4P = w[6], k4E = w[7]
    cdef double[::1] sP = w[8], sE = w[9], dP = w[10], dE = w[11]

    with nogil:
        _rhs(P, E, h, relativistic, periodic, k1P, k1E, dP, dE)
        for i in range(n):
            sP[i] = P[i] + half * k1P[i]
            sE[i] = E[i] + half * k1E[i]
        _rhs(sP, sE, h, relativistic, periodic, k2P, k2E, dP, dE)
        for i in range(n):
            sP[i] = P[i] + half * k2P[i]
            sE[i] = E[i] + half * k2E[i]
        _rhs(sP, sE, h, relativistic, periodic, k3P, k3E, dP, dE)
        for i in range(n):
            sP[i] = P[i] + dt * k3P[i]
            sE[i] = E[i] + dt * k3E[i]
        _rhs(sP, sE, h, relativistic, periodic, k4P, k4E, dP, dE)
        for i in range(n):
            P[i] = P[i] + sixth * (k1P[i] + 2.0 * k2P[i] + 2.0 * k3P[i] + k4P[i])
            E[i] = E[i] + sixth * (k1E[i] + 2.0 * k2E[i] + 2.0 * k3E[i] + k4E[i])
        _filter8(P, filter_strength, periodic, sP)
        _filter8(E, filter_strength, periodic, sE)
