"""Standalone SVG rendering of a learned planar group action.

The figure shows four things in user coordinates (view box
[-1.5, 1.5]^2 by default): the reference circular orbit through the
source point (solid), the locus exp(t*a) x for t in [0, 2*pi] under the
learned generator (dashed), the tangent segment from x to x + a x
(dashed, distinct stroke), and the source point marker. A companion CSV
of the sampled locus is written for external tooling.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .expm import orbit, tangent
from .linalg import as_square_matrix, as_vector
from .serialize import format_float


@dataclass(frozen=True)
class FigureSpec:
    source_point: np.ndarray
    orbit_grid_points: int = 360
    include_true_orbit: bool = True
    width: int = 720
    height: int = 720
    view_min: float = -1.5
    view_max: float = 1.5

    def __post_init__(self):
        if self.orbit_grid_points < 8:
            raise ValueError(f"orbit_grid_points must be >= 8, got {self.orbit_grid_points}")
        if self.width < 1 or self.height < 1:
            raise ValueError("canvas must be positive")
        if not self.view_min < self.view_max:
            raise ValueError("view range is empty")


def orbit_samples(a, spec: FigureSpec):
    """Locus of the source point over one full parameter turn."""
    grid = np.linspace(0.0, 2.0 * np.pi, spec.orbit_grid_points)
    return orbit(a, spec.source_point, grid)


def write_orbit_csv(samples, path) -> None:
    """Columns t,p0,...,p{n-1}; one row per grid point, 17-digit values."""
    n = samples[0].point.shape[0]
    header = ",".join(["t"] + [f"p{i}" for i in range(n)])
    lines = [header]
    for s in samples:
        lines.append(",".join([format_float(s.t)] + [format_float(v) for v in s.point]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def render_svg(a, spec: FigureSpec, samples=None) -> str:
    """Build the SVG document; requires a 2-dimensional generator."""
    a = as_square_matrix(a)
    x = as_vector(spec.source_point)
    if a.shape[0] != 2 or x.shape[0] != 2:
        raise ValueError("figure rendering requires a 2-dimensional model and point")
    if samples is None:
        samples = orbit_samples(a, spec)

    span = spec.view_max - spec.view_min

    def px(p):
        return (p[0] - spec.view_min) / span * spec.width

    def py(p):
        return (spec.view_max - p[1]) / span * spec.height

    def fmt(v):
        return f"{v:.3f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">'
    ]
    if spec.include_true_orbit:
        r = np.linalg.norm(x) / span * spec.width
        parts.append(
            f'<circle cx="{fmt(px((0.0, 0.0)))}" cy="{fmt(py((0.0, 0.0)))}" r="{fmt(r)}" '
            'fill="none" stroke="#1f77b4" stroke-width="2"/>'
        )
    pts = " ".join(f"{fmt(px(s.point))},{fmt(py(s.point))}" for s in samples)
    parts.append(f'<polyline points="{pts}" fill="none" stroke="#ff7f0e" stroke-width="2" stroke-dasharray="8 5"/>')
    tip = x + tangent(a, x)
    parts.append(
        f'<polyline points="{fmt(px(x))},{fmt(py(x))} {fmt(px(tip))},{fmt(py(tip))}" '
        'fill="none" stroke="#2ca02c" stroke-width="2" stroke-dasharray="4 3"/>'
    )
    # Marker is a rounded rect, not a <circle>, so the reference orbit stays
    # the document's only circle element.
    parts.append(
        f'<rect x="{fmt(px(x) - 5)}" y="{fmt(py(x) - 5)}" width="10" height="10" rx="5" fill="#d62728"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
