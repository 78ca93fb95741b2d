"""Learn the generator of a one-parameter matrix group from data pairs.

Given observations (x_i, y_i) where each y_i is x_i moved by an unknown
group element exp(t_i * A) with small, per-pair t_i, the library
recovers A (up to scale and sign) by minimizing the summed rectified
cosine distance between the displacements y_i - x_i and the candidate
tangents A x_i, then reconstructs and scores the group action through
the matrix exponential.
"""

from ._backend import active_backend, set_backend
from .data import (
    DataPair,
    Dataset,
    DatasetFormatError,
    Provenance,
    generate_pairs,
    read_dataset,
    sample_unit_sphere,
    so2_generator,
    write_dataset,
)
from .evaluate import EvalReport, alignment, canonicalize, evaluate_model, orbit_radial_deviation, write_report
from .expm import OrbitSample, expm, flow, orbit, tangent
from .figure import FigureSpec, orbit_samples, render_svg, write_orbit_csv
from .linalg import frobenius_inner, mat_vec_mul, vec_norm
from .objective import (
    DegenerateDatasetError,
    LossBreakdown,
    SkipBoundaryError,
    central_difference,
    empirical_risk,
    finite_diff_gradient,
    risk_gradient,
    sample_gradient,
    sample_loss,
)
from .trainer import (
    InitializationError,
    TrainConfig,
    TrainResult,
    init_generator,
    read_model,
    train,
    write_model,
)

__version__ = "0.1.0"

__all__ = [
    "DataPair",
    "Dataset",
    "DatasetFormatError",
    "DegenerateDatasetError",
    "EvalReport",
    "FigureSpec",
    "InitializationError",
    "LossBreakdown",
    "OrbitSample",
    "Provenance",
    "SkipBoundaryError",
    "TrainConfig",
    "TrainResult",
    "active_backend",
    "alignment",
    "canonicalize",
    "central_difference",
    "empirical_risk",
    "evaluate_model",
    "expm",
    "finite_diff_gradient",
    "flow",
    "frobenius_inner",
    "generate_pairs",
    "init_generator",
    "mat_vec_mul",
    "orbit",
    "orbit_radial_deviation",
    "orbit_samples",
    "read_dataset",
    "read_model",
    "render_svg",
    "risk_gradient",
    "sample_gradient",
    "sample_loss",
    "sample_unit_sphere",
    "set_backend",
    "so2_generator",
    "tangent",
    "train",
    "vec_norm",
    "write_dataset",
    "write_model",
    "write_orbit_csv",
    "write_report",
]
