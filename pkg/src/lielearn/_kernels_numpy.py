"""Vectorized numpy kernels for the per-sample loss/gradient sweeps.

Skipped samples (displacement or tangent norm at or below ``eps``) are
marked with NaN so callers can count them; gradients of skipped samples
are NaN-filled as well. Both kernel backends share this convention.
"""

from __future__ import annotations

import numpy as np


def loss_terms(a: np.ndarray, xs: np.ndarray, ys: np.ndarray, eps: float) -> np.ndarray:
    """Per-sample rectified cosine distance, NaN where skipped. Shape (N,)."""
    d = ys - xs
    u = xs @ a.T
    nd = np.sqrt(np.einsum("ij,ij->i", d, d))
    nu = np.sqrt(np.einsum("ij,ij->i", u, u))
    ok = (nd > eps) & (nu > eps)
    s = np.einsum("ij,ij->i", d, u)
    denom = np.where(ok, nd * nu, 1.0)
    c = np.minimum(np.abs(s) / denom, 1.0)
    return np.where(ok, 1.0 - c, np.nan)


def grad_terms(a: np.ndarray, xs: np.ndarray, ys: np.ndarray, eps: float) -> np.ndarray:
    """Per-sample gradient of the loss w.r.t. the matrix, NaN rows where skipped.

    Shape (N, n, n). For d = y - x, u = a x, s = d.u the summand gradient is
    -( sign(s) d x^T / (|d||u|) - |s| u x^T / (|d||u|^3) ), with sign(0) = 0.
    """
    d = ys - xs
    u = xs @ a.T
    nd = np.sqrt(np.einsum("ij,ij->i", d, d))
    nu = np.sqrt(np.einsum("ij,ij->i", u, u))
    ok = (nd > eps) & (nu > eps)
    s = np.einsum("ij,ij->i", d, u)
    coef_d = np.sign(s) / np.where(ok, nd * nu, 1.0)
    coef_u = np.abs(s) / np.where(ok, nd * nu**3, 1.0)
    g = np.einsum("i,ij,ik->ijk", coef_u, u, xs) - np.einsum("i,ij,ik->ijk", coef_d, d, xs)
    return np.where(ok[:, None, None], g, np.nan)
