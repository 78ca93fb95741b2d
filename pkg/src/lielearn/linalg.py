"""Dense vector and square-matrix helpers shared by every other module.

All values are float64 numpy arrays. Inputs are validated once at the
public boundary and trusted afterwards; the hot training kernels bypass
these wrappers entirely (see ``_kernels_numpy`` / ``_kernels_numba``).
"""

from __future__ import annotations

import numpy as np


def as_vector(v, name: str = "vector") -> np.ndarray:
    """Coerce to a finite 1-d float64 array of length >= 1."""
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise ValueError(f"{name} must be 1-d with at least one entry, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_square_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite square 2-d float64 array."""
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"{name} must be a square 2-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def mat_vec_mul(m, v) -> np.ndarray:
    """Matrix-vector product with a dimension check."""
    m = as_square_matrix(m)
    v = as_vector(v)
    if m.shape[0] != v.shape[0]:
        raise ValueError(f"dimension mismatch: matrix is {m.shape[0]}x{m.shape[0]}, vector has length {v.shape[0]}")
    return m @ v


def frobenius_inner(a, b) -> float:
    """Entrywise inner product sum_jk a_jk * b_jk."""
    a = as_square_matrix(a, "a")
    b = as_square_matrix(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.sum(a * b))


def vec_norm(v) -> float:
    """Euclidean norm."""
    return float(np.linalg.norm(as_vector(v)))
