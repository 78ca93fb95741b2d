"""Synthetic pair generation under a known group action, plus dataset file I/O.

A dataset is a collection of (x, y) pairs where y = exp(t*a_true) x for a
hidden per-pair parameter t. The default preset reproduces the planar
rotation toy problem: sources uniform on the unit circle, t uniform on
(0, pi/30]. Any square generator works, not just rotations.

Randomness comes from numpy's PCG64 (``numpy.random.default_rng``), a
seedable, splittable 64-bit generator; equal seeds give byte-identical
datasets.

File format: CSV with header ``x0,...,x{n-1},y0,...,y{n-1}[,t]``, one
pair per row, UTF-8, '.' decimal point, 17-significant-digit values
(exact round-trip), plus a ``<stem>.meta.json`` sidecar carrying
provenance.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .expm import flow
from .linalg import as_square_matrix
from .serialize import format_float, write_json

T_MAX_DEFAULT = np.pi / 30  # 0.10471975511965977


class DatasetFormatError(ValueError):
    """A dataset file does not conform to the CSV schema."""


@dataclass(frozen=True)
class DataPair:
    """One before/after observation; t_true is known only for synthetic data."""

    x: np.ndarray
    y: np.ndarray
    t_true: float | None = None


@dataclass(frozen=True)
class Provenance:
    generator: np.ndarray | None = None
    t_min: float | None = None
    t_max: float | None = None
    seed: int | None = None


@dataclass
class Dataset:
    """Stacked pair arrays of shape (count, n), with optional provenance."""

    x: np.ndarray
    y: np.ndarray
    t_true: np.ndarray | None = None
    provenance: Provenance | None = None

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=np.float64)
        self.y = np.asarray(self.y, dtype=np.float64)
        if self.x.ndim != 2 or self.x.shape != self.y.shape:
            raise ValueError(f"x and y must both have shape (count, n), got {self.x.shape} and {self.y.shape}")
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.y))):
            raise ValueError("dataset contains non-finite coordinates")
        if self.t_true is not None:
            self.t_true = np.asarray(self.t_true, dtype=np.float64)
            if self.t_true.shape != (self.x.shape[0],):
                raise ValueError("t_true must have one entry per pair")

    @property
    def n(self) -> int:
        return self.x.shape[1]

    def __len__(self) -> int:
        return self.x.shape[0]

    def pair(self, i: int) -> DataPair:
        t = float(self.t_true[i]) if self.t_true is not None else None
        return DataPair(x=self.x[i].copy(), y=self.y[i].copy(), t_true=t)

    def __iter__(self):
        return (self.pair(i) for i in range(len(self)))

    def tail(self, count: int) -> "Dataset":
        """Last ``count`` rows as a new dataset (deterministic holdout split)."""
        if not 1 <= count <= len(self):
            raise ValueError(f"tail count must be in [1, {len(self)}], got {count}")
        t = self.t_true[-count:] if self.t_true is not None else None
        return Dataset(x=self.x[-count:], y=self.y[-count:], t_true=t, provenance=self.provenance)


def so2_generator() -> np.ndarray:
    """Generator of planar rotations: [[0, 1], [-1, 0]]."""
    return np.array([[0.0, 1.0], [-1.0, 0.0]])


def sample_unit_sphere(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random point on the unit sphere in R^n.

    n=2 draws a uniform angle directly; higher dimensions normalize a
    Gaussian draw.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n == 2:
        theta = rng.random() * 2.0 * np.pi
        return np.array([np.cos(theta), np.sin(theta)])
    while True:
        v = rng.standard_normal(n)
        nrm = np.linalg.norm(v)
        if nrm > 1e-8:
            return v / nrm


def generate_pairs(a_true, count: int, t_min: float, t_max: float, seed: int) -> Dataset:
    """Draw ``count`` pairs (x, exp(t*a_true) x) with t uniform on (t_min, t_max].

    The half-open support is realized as t = t_max - u*(t_max - t_min)
    for u in [0, 1), re-drawn in the (measure-zero) event that rounding
    lands exactly on t_min.
    """
    a_true = as_square_matrix(a_true, "a_true")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not (np.isfinite(t_min) and np.isfinite(t_max) and t_min < t_max):
        raise ValueError(f"need t_min < t_max, got [{t_min}, {t_max}]")
    n = a_true.shape[0]
    rng = np.random.default_rng(seed)
    xs = np.empty((count, n))
    ys = np.empty((count, n))
    ts = np.empty(count)
    for i in range(count):
        x = sample_unit_sphere(n, rng)
        t = t_min
        while t == t_min:
            t = t_max - rng.random() * (t_max - t_min)
        xs[i] = x
        ys[i] = flow(a_true, t, x)
        ts[i] = t
    prov = Provenance(generator=a_true.copy(), t_min=float(t_min), t_max=float(t_max), seed=int(seed))
    return Dataset(x=xs, y=ys, t_true=ts, provenance=prov)


def _sidecar_path(path: Path) -> Path:
    return path.with_name(path.stem + ".meta.json")


def write_dataset(dataset: Dataset, path) -> None:
    """Write the CSV plus its provenance sidecar."""
    path = Path(path)
    n = dataset.n
    cols = [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)]
    if dataset.t_true is not None:
        cols.append("t")
    lines = [",".join(cols)]
    for i in range(len(dataset)):
        fields = [format_float(v) for v in dataset.x[i]]
        fields += [format_float(v) for v in dataset.y[i]]
        if dataset.t_true is not None:
            fields.append(format_float(dataset.t_true[i]))
        lines.append(",".join(fields))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    meta: dict = {"n": n, "count": len(dataset)}
    prov = dataset.provenance
    if prov is not None:
        if prov.seed is not None:
            meta["seed"] = prov.seed
        if prov.t_min is not None:
            meta["t_min"] = prov.t_min
        if prov.t_max is not None:
            meta["t_max"] = prov.t_max
        if prov.generator is not None:
            meta["generator"] = prov.generator
    write_json(meta, _sidecar_path(path))


def _parse_header(header: str) -> tuple[int, bool]:
    cols = header.strip().split(",")
    has_t = cols[-1] == "t"
    body = cols[:-1] if has_t else cols
    if len(body) < 2 or len(body) % 2 != 0:
        raise DatasetFormatError(f"malformed header: {header.strip()!r}")
    n = len(body) // 2
    expected = [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)]
    if body != expected:
        raise DatasetFormatError(f"malformed header: {header.strip()!r}")
    return n, has_t


def read_dataset(path) -> Dataset:
    """Read a dataset CSV (and its sidecar, when present)."""
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise DatasetFormatError(f"{path}: empty file")
    n, has_t = _parse_header(lines[0])
    width = 2 * n + (1 if has_t else 0)
    xs, ys, ts = [], [], []
    for row_no, line in enumerate(lines[1:], start=1):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != width:
            raise DatasetFormatError(f"{path}: row {row_no}: expected {width} fields, got {len(fields)}")
        try:
            vals = [float(f) for f in fields]
        except ValueError:
            raise DatasetFormatError(f"{path}: row {row_no}: non-numeric field") from None
        xs.append(vals[:n])
        ys.append(vals[n : 2 * n])
        if has_t:
            ts.append(vals[2 * n])
    if not xs:
        raise DatasetFormatError(f"{path}: no data rows")
    prov = _read_sidecar(_sidecar_path(path), n)
    return Dataset(
        x=np.array(xs),
        y=np.array(ys),
        t_true=np.array(ts) if has_t else None,
        provenance=prov,
    )


def _read_sidecar(path: Path, n: int) -> Provenance | None:
    if not path.exists():
        return None
    import json

    with open(path, "r", encoding="utf-8") as fh:
        meta = json.load(fh)
    gen = meta.get("generator")
    if gen is not None:
        gen = as_square_matrix(gen, "generator")
        if gen.shape[0] != n:
            raise DatasetFormatError(f"{path}: generator dimension {gen.shape[0]} does not match data n={n}")
    t_min = meta.get("t_min")
    t_max = meta.get("t_max")
    seed = meta.get("seed")
    return Provenance(
        generator=gen,
        t_min=float(t_min) if t_min is not None else None,
        t_max=float(t_max) if t_max is not None else None,
        seed=int(seed) if seed is not None else None,
    )
