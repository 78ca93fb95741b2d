"""Metrics for a learned generator.

Because the risk is invariant to rescaling the generator by any nonzero
constant, recovery is judged on the equivalence class {c*a : c != 0}:
``canonicalize`` picks the unit-Frobenius, sign-fixed representative and
``alignment`` measures |<a, b>| / (||a|| ||b||), which is 1 exactly when
the two matrices are proportional.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .expm import flow
from .linalg import as_square_matrix, as_vector
from .objective import empirical_risk
from .serialize import write_json


@dataclass(frozen=True)
class EvalReport:
    """Aggregate quality measures for a learned generator.

    ``alignment`` is None when no reference generator was supplied.
    """

    alignment: float | None
    heldout_risk_mean: float
    orbit_radial_deviation: float
    canonical_a: np.ndarray
    skipped: int

    def to_dict(self) -> dict:
        return {
            "alignment": self.alignment,
            "heldout_risk_mean": self.heldout_risk_mean,
            "orbit_radial_deviation": self.orbit_radial_deviation,
            "canonical_a": self.canonical_a,
            "skipped": self.skipped,
        }


def canonicalize(a) -> np.ndarray:
    """Unit-Frobenius representative with the largest-|entry| made positive.

    Ties on |entry| break toward the earliest row-major index, so the
    result is identical for any nonzero rescaling of the input.
    """
    a = as_square_matrix(a)
    nrm = np.linalg.norm(a)
    if nrm == 0.0:
        raise ValueError("cannot canonicalize the zero matrix")
    out = a / nrm
    flat = np.abs(out).ravel()
    lead = out.ravel()[int(np.argmax(flat))]
    if lead < 0:
        out = -out
    return out


def alignment(a, b) -> float:
    """|<a, b>|/(||a|| ||b||) in [0, 1]; 1 iff the matrices are proportional."""
    a = as_square_matrix(a, "a")
    b = as_square_matrix(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ValueError("alignment is undefined for the zero matrix")
    return float(min(1.0, abs(np.sum(a * b)) / (na * nb)))


def orbit_radial_deviation(a, x, grid_points: int = 360) -> float:
    """Worst relative drift of ||exp(t*a) x|| from ||x|| over t in [0, 2*pi].

    Zero exactly when the flow preserves the radius (rotations); grows
    with any symmetric contamination of the generator.
    """
    a = as_square_matrix(a)
    x = as_vector(x)
    if grid_points < 8:
        raise ValueError(f"grid_points must be >= 8, got {grid_points}")
    r0 = np.linalg.norm(x)
    if r0 == 0.0:
        raise ValueError("source point must be nonzero")
    worst = 0.0
    for t in np.linspace(0.0, 2.0 * np.pi, grid_points):
        r = np.linalg.norm(flow(a, float(t), x))
        worst = max(worst, abs(r - r0) / r0)
    return worst


def evaluate_model(a, heldout: Dataset, a_true=None, grid_points: int = 360, eps: float = 1e-12) -> EvalReport:
    """Score a generator on held-out pairs.

    Mean risk is total/used over the held-out set; the orbit deviation
    is probed at the first held-out source point.
    """
    a = as_square_matrix(a)
    breakdown = empirical_risk(a, heldout, eps)
    align = None
    if a_true is not None:
        align = alignment(a, a_true)
    deviation = orbit_radial_deviation(a, heldout.x[0], grid_points)
    return EvalReport(
        alignment=align,
        heldout_risk_mean=breakdown.total / breakdown.used,
        orbit_radial_deviation=deviation,
        canonical_a=canonicalize(a),
        skipped=breakdown.skipped,
    )


def write_report(report: EvalReport, path) -> None:
    write_json(report.to_dict(), path)
