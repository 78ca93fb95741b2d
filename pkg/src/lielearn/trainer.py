"""Full-batch gradient descent on the rectified cosine distance risk.

The model is a single linear map: the matrix being optimized is itself
the learned generator. Because the risk is scale-invariant in the
matrix, each accepted step is optionally renormalized to unit Frobenius
norm, which pins down the one flat (scale) direction without changing
the optimum. A backtracking halving of the step guards against the
curvature spikes this objective has near small ``||a x||``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .data import Dataset
from .linalg import as_square_matrix
from .objective import DegenerateDatasetError, empirical_risk, risk_gradient
from .serialize import write_json

_MAX_HALVINGS = 30
_INIT_ATTEMPTS = 100

STOP_MAX_EPOCHS = "max_epochs"
STOP_PLATEAU = "plateau"


class InitializationError(RuntimeError):
    """Could not find a starting matrix under which no sample degenerates."""


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for gradient descent.

    ``init_scale`` is the standard deviation of the Gaussian entries of
    the starting matrix; None means 1/n.
    """

    learning_rate: float = 0.5
    max_epochs: int = 2000
    plateau_tol: float = 1e-9
    plateau_window: int = 20
    init_scale: float | None = None
    seed: int = 0
    renormalize: bool = True
    eps: float = 1e-12

    def __post_init__(self):
        if not self.learning_rate > 0:
            raise ValueError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.max_epochs < 1:
            raise ValueError(f"max_epochs must be >= 1, got {self.max_epochs}")
        if self.plateau_window < 1:
            raise ValueError(f"plateau_window must be >= 1, got {self.plateau_window}")
        if self.init_scale is not None and not self.init_scale > 0:
            raise ValueError(f"init_scale must be positive, got {self.init_scale}")
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")


@dataclass
class TrainResult:
    a_learned: np.ndarray
    loss_history: list[float] = field(default_factory=list)
    epochs_run: int = 0
    stop_reason: str = STOP_MAX_EPOCHS
    skipped_final: int = 0


def init_generator(n: int, cfg: TrainConfig, dataset: Dataset | None = None) -> np.ndarray:
    """Random Gaussian starting matrix.

    When a dataset is given, candidates under which some sample would be
    skipped because ``||a x_i||`` vanishes are re-drawn (up to 100
    attempts); persistent failure signals degenerate data such as
    all-zero sources. Pairs degenerate in y - x alone are a property of
    the data, not the candidate, and are left to the skip accounting.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    scale = cfg.init_scale if cfg.init_scale is not None else 1.0 / n
    rng = np.random.default_rng(cfg.seed)
    for _ in range(_INIT_ATTEMPTS):
        a = rng.normal(0.0, scale, size=(n, n))
        if dataset is None:
            return a
        u_norms = np.linalg.norm(dataset.x @ a.T, axis=1)
        if np.all(u_norms > cfg.eps):
            return a
    raise InitializationError(
        f"no viable starting matrix after {_INIT_ATTEMPTS} draws; "
        "the dataset is degenerate (e.g. zero source points)"
    )


def train(dataset: Dataset, cfg: TrainConfig | None = None, a0: np.ndarray | None = None) -> TrainResult:
    """Minimize the empirical risk by full-batch gradient descent.

    Each epoch takes one step along the negative risk gradient with
    backtracking (the step halves, up to 30 times, while it would
    increase the risk; an epoch that cannot decrease it leaves the
    matrix unchanged). Stops when the best loss has not improved by
    ``plateau_tol`` for ``plateau_window`` epochs, or at ``max_epochs``.

    ``a0`` overrides the random start (useful for warm restarts).
    """
    if cfg is None:
        cfg = TrainConfig()
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    n = dataset.n
    if a0 is not None:
        a = as_square_matrix(a0, "a0").copy()
        if a.shape[0] != n:
            raise ValueError(f"a0 is {a.shape[0]}x{a.shape[0]} but dataset has n={n}")
    else:
        a = init_generator(n, cfg, dataset)

    breakdown = empirical_risk(a, dataset, cfg.eps)
    current = breakdown.total
    history: list[float] = []
    best = current
    stale = 0
    stop_reason = STOP_MAX_EPOCHS

    for epoch in range(1, cfg.max_epochs + 1):
        grad = risk_gradient(a, dataset, cfg.eps)
        step = cfg.learning_rate
        for _ in range(_MAX_HALVINGS + 1):
            cand = a - step * grad
            if cfg.renormalize:
                nrm = np.linalg.norm(cand)
                if nrm == 0.0:
                    step *= 0.5
                    continue
                cand = cand / nrm
            try:
                cand_breakdown = empirical_risk(cand, dataset, cfg.eps)
            except DegenerateDatasetError:
                step *= 0.5
                continue
            if cand_breakdown.total <= current:
                a = cand
                breakdown = cand_breakdown
                current = cand_breakdown.total
                break
            step *= 0.5
        if not np.isfinite(current):
            raise RuntimeError(f"non-finite loss at epoch {epoch}")
        history.append(current)
        if best - current > cfg.plateau_tol:
            best = current
            stale = 0
        else:
            stale += 1
        if stale >= cfg.plateau_window:
            stop_reason = STOP_PLATEAU
            break

    return TrainResult(
        a_learned=a,
        loss_history=history,
        epochs_run=len(history),
        stop_reason=stop_reason,
        skipped_final=breakdown.skipped,
    )


def write_model(result: TrainResult, cfg: TrainConfig, path) -> None:
    """Serialize a trained generator with its loss history and config."""
    n = result.a_learned.shape[0]
    payload = {
        "n": n,
        "A": result.a_learned,
        "loss_history": result.loss_history,
        "config": asdict(cfg),
        "stop_reason": result.stop_reason,
    }
    write_json(payload, Path(path))


def read_model(path) -> tuple[np.ndarray, dict]:
    """Load a model file; returns (matrix, full payload dict)."""
    import json

    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    a = as_square_matrix(payload["A"], "model matrix")
    if a.shape[0] != payload.get("n", a.shape[0]):
        raise ValueError(f"{path}: matrix shape {a.shape} disagrees with declared n={payload['n']}")
    return a, payload
