"""Rectified cosine distance risk and its gradient.

For a candidate generator ``a`` and an observed pair (x, y), let
d = y - x and u = a x. The per-sample loss is

    1 - |d . u| / (||d|| ||u||)          in [0, 1],

i.e. one minus the absolute cosine between the observed displacement and
the candidate tangent direction. The empirical risk is the sum over all
non-degenerate samples. Samples where ``||d||`` or ``||u||`` falls at or
below ``eps`` are skipped and counted rather than errored: the loss is
undefined there, and the skip count surfaces pathological data without
aborting a whole sweep.

The risk is degree-0 homogeneous in ``a`` (scaling ``a`` by any nonzero
constant leaves it unchanged), which implies <grad, a> = 0 exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import get_kernels
from .data import DataPair, Dataset
from .linalg import as_square_matrix

DEFAULT_EPS = 1e-12


class DegenerateDatasetError(ValueError):
    """Every sample in the dataset was skipped; the risk is undefined."""


class SkipBoundaryError(RuntimeError):
    """A finite-difference probe changed the set of skipped samples."""


@dataclass(frozen=True)
class LossBreakdown:
    """Risk total plus how many samples contributed.

    ``per_sample`` (when requested) has one entry per dataset row, NaN
    at skipped rows.
    """

    total: float
    used: int
    skipped: int
    per_sample: np.ndarray | None = None


def _dataset_arrays(a: np.ndarray, dataset: Dataset) -> tuple[np.ndarray, np.ndarray]:
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    if dataset.n != a.shape[0]:
        raise ValueError(f"dimension mismatch: matrix is {a.shape[0]}x{a.shape[0]}, dataset has n={dataset.n}")
    xs = np.ascontiguousarray(dataset.x, dtype=np.float64)
    ys = np.ascontiguousarray(dataset.y, dtype=np.float64)
    return xs, ys


def sample_loss(a, pair: DataPair, eps: float = DEFAULT_EPS) -> float | None:
    """Loss of a single pair, or None when the sample is degenerate."""
    a = as_square_matrix(a)
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    xs = np.atleast_2d(np.asarray(pair.x, dtype=np.float64))
    ys = np.atleast_2d(np.asarray(pair.y, dtype=np.float64))
    if xs.shape[1] != a.shape[0] or ys.shape[1] != a.shape[0]:
        raise ValueError("pair dimension does not match matrix dimension")
    val = get_kernels().loss_terms(a, xs, ys, eps)[0]
    return None if np.isnan(val) else float(val)


def sample_gradient(a, pair: DataPair, eps: float = DEFAULT_EPS) -> np.ndarray | None:
    """Gradient of a single pair's loss w.r.t. ``a``, or None when skipped."""
    a = as_square_matrix(a)
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    xs = np.atleast_2d(np.asarray(pair.x, dtype=np.float64))
    ys = np.atleast_2d(np.asarray(pair.y, dtype=np.float64))
    if xs.shape[1] != a.shape[0] or ys.shape[1] != a.shape[0]:
        raise ValueError("pair dimension does not match matrix dimension")
    g = get_kernels().grad_terms(a, xs, ys, eps)[0]
    return None if np.isnan(g[0, 0]) else g


def empirical_risk(a, dataset: Dataset, eps: float = DEFAULT_EPS, keep_per_sample: bool = False) -> LossBreakdown:
    """Sum of per-sample losses over all non-skipped pairs.

    Raises DegenerateDatasetError when every sample is skipped. The
    reduction runs in dataset order over a fixed per-sample array, so
    repeated evaluations are bit-identical.
    """
    a = as_square_matrix(a)
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    xs, ys = _dataset_arrays(a, dataset)
    losses = get_kernels().loss_terms(a, xs, ys, eps)
    mask = np.isfinite(losses)
    used = int(mask.sum())
    if used == 0:
        raise DegenerateDatasetError("degenerate dataset: every sample was skipped")
    total = float(losses[mask].sum())
    return LossBreakdown(
        total=total,
        used=used,
        skipped=len(losses) - used,
        per_sample=losses if keep_per_sample else None,
    )


def risk_gradient(a, dataset: Dataset, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Gradient of the empirical risk w.r.t. ``a``, summed in dataset order."""
    a = as_square_matrix(a)
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    xs, ys = _dataset_arrays(a, dataset)
    terms = get_kernels().grad_terms(a, xs, ys, eps)
    mask = np.isfinite(terms[:, 0, 0])
    if not mask.any():
        raise DegenerateDatasetError("degenerate dataset: every sample was skipped")
    return terms[mask].sum(axis=0)


def central_difference(f, a, h: float) -> np.ndarray:
    """Entrywise central-difference gradient of a scalar function of a matrix."""
    a = as_square_matrix(a)
    if not h > 0:
        raise ValueError(f"h must be positive, got {h}")
    n = a.shape[0]
    g = np.empty((n, n))
    for j in range(n):
        for k in range(n):
            ap = a.copy()
            am = a.copy()
            ap[j, k] += h
            am[j, k] -= h
            g[j, k] = (f(ap) - f(am)) / (2.0 * h)
    return g


def finite_diff_gradient(a, dataset: Dataset, h: float = 1e-6, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Central-difference gradient of the empirical risk (verification oracle).

    Raises SkipBoundaryError when the +h and -h probes of any entry skip
    different sample sets, which would silently invalidate the estimate.
    """
    a = as_square_matrix(a)
    if not h > 0:
        raise ValueError(f"h must be positive, got {h}")
    n = a.shape[0]
    g = np.empty((n, n))
    for j in range(n):
        for k in range(n):
            ap = a.copy()
            am = a.copy()
            ap[j, k] += h
            am[j, k] -= h
            rp = empirical_risk(ap, dataset, eps)
            rm = empirical_risk(am, dataset, eps)
            if rp.used != rm.used:
                raise SkipBoundaryError(
                    f"finite-difference probe at entry ({j}, {k}) crossed a skip boundary "
                    f"({rp.used} vs {rm.used} samples used)"
                )
            g[j, k] = (rp.total - rm.total) / (2.0 * h)
    return g
