"""Named initial-data families with closed-form spatial derivatives.

The breaking criteria consume pointwise derivatives of the initial data;
analytic families provide them exactly, tabulated data falls back to
fourth-order finite differences on its own grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .eulerian import gaussian_field, gaussian_field_slope, spatial_derivative

__all__ = ["ProfileSamples", "Profile", "TableProfile", "make_profile"]


@dataclass(frozen=True)
class ProfileSamples:
    """Initial data and slopes sampled on a grid of foot points."""

    rho: np.ndarray
    P0: np.ndarray
    E0: np.ndarray
    dP0: np.ndarray
    dE0: np.ndarray


@dataclass(frozen=True)
class Profile:
    """Analytic initial-data family."""

    name: str
    params: dict
    momentum: Callable[[np.ndarray], np.ndarray]
    field: Callable[[np.ndarray], np.ndarray]
    momentum_slope: Callable[[np.ndarray], np.ndarray]
    field_slope: Callable[[np.ndarray], np.ndarray]
    default_span: tuple[float, float]

    def samples(self, rho) -> ProfileSamples:
        rho = np.asarray(rho, dtype=float)
        return ProfileSamples(
            rho=rho,
            P0=np.broadcast_to(self.momentum(rho), rho.shape).astype(float),
            E0=np.broadcast_to(self.field(rho), rho.shape).astype(float),
            dP0=np.broadcast_to(self.momentum_slope(rho), rho.shape).astype(float),
            dE0=np.broadcast_to(self.field_slope(rho), rho.shape).astype(float),
        )


@dataclass(frozen=True)
class TableProfile:
    """Tabulated initial data on its own uniform grid.

    Slopes come from fourth-order finite differences, so classification of
    tabulated data inherits the table resolution.
    """

    name: str
    params: dict
    rho: np.ndarray
    P0: np.ndarray
    E0: np.ndarray

    @property
    def default_span(self) -> tuple[float, float]:
        return float(self.rho[0]), float(self.rho[-1])

    def samples(self, rho=None) -> ProfileSamples:
        h = float(self.rho[1] - self.rho[0])
        return ProfileSamples(
            rho=self.rho,
            P0=self.P0,
            E0=self.E0,
            dP0=spatial_derivative(self.P0, h),
            dE0=spatial_derivative(self.E0, h),
        )


def _load_table(path: str | Path) -> TableProfile:
    data = np.genfromtxt(path, delimiter=",", names=True)
    names = data.dtype.names
    if names is None or "rho" not in names:
        raise ValueError(f"table {path}: need a CSV header with a 'rho' column")
    momentum_col = next((c for c in ("P", "P0", "V", "V0") if c in names), None)
    field_col = next((c for c in ("E", "E0") if c in names), None)
    if momentum_col is None or field_col is None:
        raise ValueError(
            f"table {path}: need momentum/velocity and field columns "
            "(P|P0|V|V0 and E|E0)"
        )
    rho = np.asarray(data["rho"], dtype=float)
    if rho.size < 5:
        raise ValueError(f"table {path}: need at least 5 rows")
    steps = np.diff(rho)
    if np.any(steps <= 0) or np.max(steps) - np.min(steps) > 1e-9 * np.max(steps):
        raise ValueError(f"table {path}: rho must be uniform and increasing")
    return TableProfile(
        name="table",
        params={"path": str(path)},
        rho=rho,
        P0=np.asarray(data[momentum_col], dtype=float),
        E0=np.asarray(data[field_col], dtype=float),
    )


def make_profile(family: str, **params):
    """Build a profile by family name.

    Families: ``gaussian(a_star, rho_star)`` (wake pulse field, zero
    momentum), ``sine(amplitude, wavenumber)`` (both components
    ``a sin(k rho)``), ``linear(alpha, beta)`` (field slope alpha, velocity
    slope beta), ``table(path)`` (CSV with columns rho, P|V, E).
    """
    if family == "gaussian":
        a_star = float(params["a_star"])
        rho_star = float(params["rho_star"])
        if rho_star <= 0:
            raise ValueError("rho_star must be positive")
        span = 4.5 * rho_star
        return Profile(
            name="gaussian",
            params={"a_star": a_star, "rho_star": rho_star},
            momentum=lambda rho: np.zeros_like(np.asarray(rho, dtype=float)),
            field=lambda rho: gaussian_field(a_star, rho_star, rho),
            momentum_slope=lambda rho: np.zeros_like(np.asarray(rho, dtype=float)),
            field_slope=lambda rho: gaussian_field_slope(a_star, rho_star, rho),
            default_span=(-span, span),
        )
    if family == "sine":
        amp = float(params["amplitude"])
        k = float(params["wavenumber"])
        if k == 0:
            raise ValueError("wavenumber must be nonzero")
        return Profile(
            name="sine",
            params={"amplitude": amp, "wavenumber": k},
            momentum=lambda rho: amp * np.sin(k * np.asarray(rho, dtype=float)),
            field=lambda rho: amp * np.sin(k * np.asarray(rho, dtype=float)),
            momentum_slope=lambda rho: amp * k * np.cos(k * np.asarray(rho, dtype=float)),
            field_slope=lambda rho: amp * k * np.cos(k * np.asarray(rho, dtype=float)),
            default_span=(0.0, 2.0 * math.pi / abs(k)),
        )
    if family == "linear":
        alpha = float(params["alpha"])
        beta = float(params["beta"])
        return Profile(
            name="linear",
            params={"alpha": alpha, "beta": beta},
            momentum=lambda rho: beta * np.asarray(rho, dtype=float),
            field=lambda rho: alpha * np.asarray(rho, dtype=float),
            momentum_slope=lambda rho: np.full_like(np.asarray(rho, dtype=float), beta),
            field_slope=lambda rho: np.full_like(np.asarray(rho, dtype=float), alpha),
            default_span=(-1.0, 1.0),
        )
    if family == "table":
        return _load_table(params["path"])
    raise ValueError(f"unknown profile family {family!r}")
