"""Selects the kernel implementation used for per-sample loss/gradient sweeps.

Two interchangeable backends exist:

* ``numba``  -- ``@njit``-compiled loops (default when numba imports cleanly)
* ``numpy``  -- vectorized pure-numpy fallback

The environment variable ``LIELEARN_BACKEND`` forces one of them; leaving
it unset picks numba when available. ``set_backend`` switches at runtime,
which the benchmark uses to time both paths in one process.
"""

from __future__ import annotations

import os

_ENV_VAR = "LIELEARN_BACKEND"
_VALID = ("numba", "numpy")

_kernels = None
_name = None


def _load(name: str):
    if name == "numba":
        from . import _kernels_numba as mod
    else:
        from . import _kernels_numpy as mod
    return mod


def _resolve():
    global _kernels, _name
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice and choice not in _VALID:
        raise ValueError(f"{_ENV_VAR} must be one of {_VALID}, got {choice!r}")
    if choice:
        _kernels = _load(choice)
        _name = choice
        return
    try:
        _kernels = _load("numba")
        _name = "numba"
    except ImportError:
        _kernels = _load("numpy")
        _name = "numpy"


def get_kernels():
    """Return the active kernel module (resolving lazily on first use)."""
    if _kernels is None:
        _resolve()
    return _kernels


def active_backend() -> str:
    """Name of the backend currently in use: 'numba' or 'numpy'."""
    if _kernels is None:
        _resolve()
    return _name


def set_backend(name: str) -> None:
    """Switch kernel backend at runtime (mainly for benchmarks and tests)."""
    global _kernels, _name
    if name not in _VALID:
        raise ValueError(f"backend must be one of {_VALID}, got {name!r}")
    _kernels = _load(name)
    _name = name
