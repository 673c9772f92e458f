"""Stepping-kernel backend selection.

The compiled extension is preferred when it imported cleanly; otherwise the
NumPy fallback takes over transparently.  ``COLDPLASMA_BACKEND=python`` (or
``=cython``) forces a choice at import time, e.g. for benchmarking.
"""
from __future__ import annotations

import os

from . import _kernels_py as _python_kernels

try:
    from . import _kernels as _cython_kernels  # type: ignore[attr-defined]
except ImportError:
    _cython_kernels = None

_AVAILABLE = {"python": _python_kernels}
if _cython_kernels is not None:
    _AVAILABLE["cython"] = _cython_kernels

_forced = os.environ.get("COLDPLASMA_BACKEND")
if _forced:
    if _forced not in _AVAILABLE:
        raise ImportError(
            f"COLDPLASMA_BACKEND={_forced!r} requested but only "
            f"{sorted(_AVAILABLE)} are available"
        )
    _active = _AVAILABLE[_forced]
else:
    _active = _AVAILABLE.get("cython", _python_kernels)


def active_backend() -> str:
    """Name of the kernel backend in use ("cython" or "python")."""
    return _active.BACKEND_NAME


def available_backends() -> list[str]:
    return sorted(_AVAILABLE)


def get_kernels(name: str | None = None):
    """Kernel module by name; the active one when ``name`` is None."""
    if name is None:
        return _active
    try:
        return _AVAILABLE[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; have {sorted(_AVAILABLE)}")


def advance(P, E, h, dt, relativistic, periodic, filter_strength=0.01) -> None:
    _active.advance(P, E, h, dt, relativistic, periodic, filter_strength)
