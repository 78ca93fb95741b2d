"""Matrix exponential and the one-parameter flow it generates.

``expm`` uses scaling-and-squaring with a truncated Taylor series: the
input is divided by 2**s so its Frobenius norm drops below 1/2, the
series is summed until the next term is negligible, and the result is
squared s times. Raw series summation would lose accuracy once ``||a||``
exceeds ~1, which orbit sampling over a full turn requires.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import as_square_matrix, as_vector

DEFAULT_TOL = 1e-12

# With ||a / 2**s|| <= 1/2 the series terms decay like 0.5**k / k!,
# so ~20 terms suffice for any tol >= 1e-16; 200 is a hard safety cap.
_MAX_TERMS = 200


@dataclass(frozen=True)
class OrbitSample:
    """One point of the curve t -> exp(t*a) x."""

    t: float
    point: np.ndarray


def expm(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Compute exp(a) for a square matrix.

    ``tol`` bounds the Frobenius norm of the first omitted-order series
    term (before the squaring phase) and must be positive.
    """
    a = as_square_matrix(a)
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    nrm = np.linalg.norm(a)
    s = 0 if nrm == 0.0 else max(0, math.ceil(math.log2(nrm)) + 1)
    m = a / (2.0**s)
    n = a.shape[0]
    result = np.eye(n)
    term = np.eye(n)
    for k in range(1, _MAX_TERMS + 1):
        term = term @ m / k
        result = result + term
        if np.linalg.norm(term) <= tol:
            break
    else:
        raise RuntimeError("exponential series did not converge; input may be ill-conditioned")
    for _ in range(s):
        result = result @ result
    return result


def flow(a, t: float, x, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Apply the group element exp(t*a) to the point x."""
    a = as_square_matrix(a)
    x = as_vector(x)
    if a.shape[0] != x.shape[0]:
        raise ValueError(f"dimension mismatch: matrix is {a.shape[0]}x{a.shape[0]}, point has length {x.shape[0]}")
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t}")
    return expm(t * a, tol) @ x


def tangent(a, x) -> np.ndarray:
    """Velocity a @ x of the orbit through x at t = 0."""
    a = as_square_matrix(a)
    x = as_vector(x)
    if a.shape[0] != x.shape[0]:
        raise ValueError(f"dimension mismatch: matrix is {a.shape[0]}x{a.shape[0]}, point has length {x.shape[0]}")
    return a @ x


def orbit(a, x, t_grid, tol: float = DEFAULT_TOL) -> list[OrbitSample]:
    """Sample the orbit of x under exp(t*a) at each grid value.

    The grid must be nonempty and strictly increasing; output order
    follows the grid.
    """
    a = as_square_matrix(a)
    x = as_vector(x)
    grid = np.asarray(t_grid, dtype=np.float64)
    if grid.ndim != 1 or grid.shape[0] == 0:
        raise ValueError("t_grid must be a nonempty 1-d sequence")
    if grid.shape[0] > 1 and not np.all(np.diff(grid) > 0):
        raise ValueError("t_grid must be strictly increasing")
    return [OrbitSample(t=float(t), point=flow(a, float(t), x, tol)) for t in grid]
