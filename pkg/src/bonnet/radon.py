"""Discrete parallel-beam projector: sparse system matrix, apply and adjoint.

The system matrix is assembled once from exact ray/pixel intersection
lengths and reused for every solver iteration.  Assembly runs in the
compiled kernel when the extension built, otherwise in the pure-Python
fallback; set ``BONNET_PURE_PYTHON=1`` before import to force the
fallback (used by the benchmark).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .core import DimensionMismatch, Grid, Image, Sinogram

if os.environ.get("BONNET_PURE_PYTHON"):
    from . import _ray_trace_py as _kernel

    BACKEND = "python"
else:
    try:
        from . import _ray_trace as _kernel  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _ray_trace_py as _kernel

        BACKEND = "python"


def default_n_tau(n: int) -> int:
    """Beamlet count covering the pixel block's diagonal at pixel resolution."""
    return math.ceil(math.sqrt(2.0) * n)


@dataclass(frozen=True)
class RadonOperator:
    """Sparse projector K with cached transpose for the adjoint."""

    grid: Grid
    angles_deg: tuple[float, ...]
    n_tau: int
    d_tau: float
    matrix: sp.csr_matrix
    _matrix_t: sp.csr_matrix = field(repr=False)

    @property
    def n_theta(self) -> int:
        return len(self.angles_deg)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def apply(self, u: Image) -> Sinogram:
        if u.grid != self.grid:
            raise DimensionMismatch("image grid does not match the projector grid")
        return Sinogram(self.n_theta, self.n_tau, self.matrix @ u.values)

    def apply_adjoint(self, f: Sinogram) -> Image:
        if f.n_theta != self.n_theta or f.n_tau != self.n_tau:
            raise DimensionMismatch("sinogram shape does not match the projector")
        return Image(self.grid, self._matrix_t @ f.values)

    # Array-level entry points for the solver's hot loop (no container
    # validation on every layer).
    def apply_values(self, u: np.ndarray) -> np.ndarray:
        return self.matrix @ u

    def apply_adjoint_values(self, f: np.ndarray) -> np.ndarray:
        return self._matrix_t @ f


def assemble(grid: Grid, n_theta: int, n_tau: int | None = None) -> RadonOperator:
    """Build the projector for ``n_theta`` angles uniform in [0, 180).

    Beamlet offsets are the ``n_tau`` midpoints of a uniform partition of
    the pixel block's circumscribed diagonal; each matrix entry is the
    exact intersection length of a ray with a pixel.
    """
    if n_theta < 1:
        raise ValueError("n_theta must be >= 1")
    if n_tau is None:
        n_tau = default_n_tau(grid.n)
    if n_tau < 1:
        raise ValueError("n_tau must be >= 1")

    angles_deg = tuple(180.0 * k / n_theta for k in range(n_theta))
    angles_rad = np.array([math.radians(a) for a in angles_deg])
    span = math.sqrt(2.0) * grid.n * grid.h
    d_tau = span / n_tau
    taus = (np.arange(n_tau) + 0.5) * d_tau - 0.5 * span

    rows, cols, vals = _kernel.ray_trace(angles_rad, taus, grid.n, grid.h)
    matrix = sp.coo_matrix(
        (vals, (rows, cols)), shape=(n_theta * n_tau, grid.size)
    ).tocsr()
    matrix_t = matrix.T.tocsr()
    return RadonOperator(grid, angles_deg, n_tau, d_tau, matrix, matrix_t)
