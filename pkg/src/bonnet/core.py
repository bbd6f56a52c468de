"""Grid geometry, image/sinogram containers and discretized L2 pairings.

Everything downstream (projector, regularizers, solver, trainer) shares
these containers.  The image domain is the unit square; the n x n pixels
sit on the interior nodes of an (n+2) x (n+2) lattice, so the pixel width
is h = 1/(n+1) and the pixel block covers [h/2, 1-h/2]^2.  Pixel values
are stored row-major with the row index running along y.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DimensionMismatch(ValueError):
    """Two objects live on incompatible grids or have inconsistent shapes."""


@dataclass(frozen=True)
class Grid:
    """Uniform n x n pixel grid on the unit square."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ValueError(f"grid needs an integer n >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def h(self) -> float:
        """Pixel width, 1/(n+1)."""
        return 1.0 / (self.n + 1)

    @property
    def size(self) -> int:
        return self.n * self.n

    def centers(self) -> tuple[np.ndarray, np.ndarray]:
        """Pixel-center coordinates (x of columns, y of rows), each length n."""
        idx = np.arange(1, self.n + 1, dtype=np.float64)
        return idx * self.h, idx * self.h


def _freeze(values, shape, what: str) -> np.ndarray:
    v = np.array(values, dtype=np.float64, copy=True)
    if v.ndim == 2 and v.shape == shape:
        v = v.reshape(-1)
    if v.shape != (shape[0] * shape[1],):
        raise DimensionMismatch(
            f"{what} values must have shape {(shape[0] * shape[1],)} or {shape}, got {v.shape}"
        )
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{what} values must be finite")
    v.flags.writeable = False
    return v


@dataclass(frozen=True)
class Image:
    """Pixel values on a Grid, flattened row-major (row index = y).

    The stored array is a read-only copy; instances are safe to share
    across threads.  Accepts a flat vector of length n^2 or an (n, n)
    matrix.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        n = self.grid.n
        object.__setattr__(self, "values", _freeze(self.values, (n, n), "image"))

    def as_matrix(self) -> np.ndarray:
        """Read-only (n, n) view, rows along y."""
        return self.values.reshape(self.grid.n, self.grid.n)

    @staticmethod
    def zeros(grid: Grid) -> "Image":
        return Image(grid, np.zeros(grid.size))


@dataclass(frozen=True)
class Sinogram:
    """Projection data, flattened angle-major: values[k*n_tau + t]."""

    n_theta: int
    n_tau: int
    values: np.ndarray

    def __post_init__(self):
        if self.n_theta < 1 or self.n_tau < 1:
            raise ValueError("sinogram needs n_theta >= 1 and n_tau >= 1")
        object.__setattr__(
            self, "values", _freeze(self.values, (self.n_theta, self.n_tau), "sinogram")
        )

    def as_matrix(self) -> np.ndarray:
        """Read-only (n_theta, n_tau) view."""
        return self.values.reshape(self.n_theta, self.n_tau)

    @staticmethod
    def zeros(n_theta: int, n_tau: int) -> "Sinogram":
        return Sinogram(n_theta, n_tau, np.zeros(n_theta * n_tau))


def l2_inner(a: Image, b: Image) -> float:
    """Discrete L2 inner product h^2 * sum(a*b) (uniform quadrature)."""
    if a.grid != b.grid:
        raise DimensionMismatch(f"grid mismatch: {a.grid} vs {b.grid}")
    h = a.grid.h
    return h * h * float(np.dot(a.values, b.values))


def l2_norm(a: Image) -> float:
    """Discrete L2 norm sqrt(l2_inner(a, a))."""
    h = a.grid.h
    return h * float(np.linalg.norm(a.values))
