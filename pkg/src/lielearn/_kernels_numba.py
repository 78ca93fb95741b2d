"""Numba-compiled kernels for the per-sample loss/gradient sweeps.

Same contract as ``_kernels_numpy``: NaN marks a skipped sample. The
loops are written entry-wise so the compiled code stays allocation-free
inside the sample loop for the small dimensions this library targets.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def loss_terms(a, xs, ys, eps):
    npairs, n = xs.shape
    out = np.empty(npairs)
    u = np.empty(n)
    for i in range(npairs):
        for j in range(n):
            acc = 0.0
            for k in range(n):
                acc += a[j, k] * xs[i, k]
            u[j] = acc
        nd2 = 0.0
        nu2 = 0.0
        s = 0.0
        for j in range(n):
            dj = ys[i, j] - xs[i, j]
            nd2 += dj * dj
            nu2 += u[j] * u[j]
            s += dj * u[j]
        nd = np.sqrt(nd2)
        nu = np.sqrt(nu2)
        if nd <= eps or nu <= eps:
            out[i] = np.nan
        else:
            c = abs(s) / (nd * nu)
            if c > 1.0:
                c = 1.0
            out[i] = 1.0 - c
    return out


@njit(cache=True)
def grad_terms(a, xs, ys, eps):
    npairs, n = xs.shape
    out = np.empty((npairs, n, n))
    u = np.empty(n)
    for i in range(npairs):
        for j in range(n):
            acc = 0.0
            for k in range(n):
                acc += a[j, k] * xs[i, k]
            u[j] = acc
        nd2 = 0.0
        nu2 = 0.0
        s = 0.0
        for j in range(n):
            dj = ys[i, j] - xs[i, j]
            nd2 += dj * dj
            nu2 += u[j] * u[j]
            s += dj * u[j]
        nd = np.sqrt(nd2)
        nu = np.sqrt(nu2)
        if nd <= eps or nu <= eps:
            for j in range(n):
                for k in range(n):
                    out[i, j, k] = np.nan
        else:
            sgn = 0.0
            if s > 0.0:
                sgn = 1.0
            elif s < 0.0:
                sgn = -1.0
            coef_d = sgn / (nd * nu)
            coef_u = abs(s) / (nd * nu * nu2)
            for j in range(n):
                dj = ys[i, j] - xs[i, j]
                row = coef_u * u[j] - coef_d * dj
                for k in range(n):
                    out[i, j, k] = row * xs[i, k]
    return out
