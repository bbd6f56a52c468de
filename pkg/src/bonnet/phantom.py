"""Ground-truth sample generation: Shepp-Logan variations and noisy sinograms.

Randomness goes through ``numpy.random.Generator`` seeded with PCG64 (the
numpy default), a documented, portable generator: a given seed reproduces
the same ensemble bit-for-bit on any platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import Grid, Image, Sinogram


@dataclass(frozen=True)
class EllipseSpec:
    """One additive ellipse of a phantom, in [-1, 1]^2 coordinates."""

    cx: float
    cy: float
    a: float
    b: float
    angle: float  # radians, counterclockwise
    intensity: float

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("ellipse semi-axes must be positive")

    def contains(self, x: float, y: float) -> bool:
        ct, st = math.cos(self.angle), math.sin(self.angle)
        xr = (x - self.cx) * ct + (y - self.cy) * st
        yr = -(x - self.cx) * st + (y - self.cy) * ct
        return (xr / self.a) ** 2 + (yr / self.b) ** 2 <= 1.0

    def mirrored(self) -> "EllipseSpec":
        """Reflection about the y axis (x -> -x)."""
        return EllipseSpec(-self.cx, self.cy, self.a, self.b, -self.angle, self.intensity)


# Ten-ellipse head phantom with intensities scaled so values stay in [0, 1]
# (the widely used "modified" variant).  Columns: intensity, a, b, cx, cy,
# rotation in degrees.
_SHEPP_LOGAN_TABLE = (
    (1.00, 0.6900, 0.9200, 0.00, 0.0000, 0.0),
    (-0.80, 0.6624, 0.8740, 0.00, -0.0184, 0.0),
    (-0.20, 0.1100, 0.3100, 0.22, 0.0000, -18.0),
    (-0.20, 0.1600, 0.4100, -0.22, 0.0000, 18.0),
    (0.10, 0.2100, 0.2500, 0.00, 0.3500, 0.0),
    (0.10, 0.0460, 0.0460, 0.00, 0.1000, 0.0),
    (0.10, 0.0460, 0.0460, 0.00, -0.1000, 0.0),
    (0.10, 0.0460, 0.0230, -0.08, -0.6050, 0.0),
    (0.10, 0.0230, 0.0230, 0.00, -0.6060, 0.0),
    (0.10, 0.0230, 0.0460, 0.06, -0.6050, 0.0),
)

SHEPP_LOGAN_ELLIPSES: tuple[EllipseSpec, ...] = tuple(
    EllipseSpec(cx, cy, a, b, math.radians(deg), inten)
    for inten, a, b, cx, cy, deg in _SHEPP_LOGAN_TABLE
)


def rasterize(ellipses, grid: Grid) -> Image:
    """Sum the ellipse intensities at every pixel center, clamped to [0, 1].

    Pixel centers on the unit square are mapped affinely onto [-1, 1]^2;
    the row index runs along y (row 0 at the bottom).
    """
    xs, ys = grid.centers()
    X = 2.0 * xs - 1.0
    Y = 2.0 * ys - 1.0
    XX, YY = np.meshgrid(X, Y)  # XX varies along columns, YY along rows
    img = np.zeros((grid.n, grid.n))
    for e in ellipses:
        ct, st = math.cos(e.angle), math.sin(e.angle)
        xr = (XX - e.cx) * ct + (YY - e.cy) * st
        yr = -(XX - e.cx) * st + (YY - e.cy) * ct
        inside = (xr / e.a) ** 2 + (yr / e.b) ** 2 <= 1.0
        img += e.intensity * inside
    return Image(grid, np.clip(img, 0.0, 1.0))


def shepp_logan(grid: Grid) -> Image:
    """The standard ten-ellipse head phantom on the given grid."""
    return rasterize(SHEPP_LOGAN_ELLIPSES, grid)


@dataclass(frozen=True)
class SampleSet:
    """An ensemble of ground-truth images with a train/test split."""

    images: tuple[Image, ...]
    seed: int
    m_train: int
    m_test: int

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if self.m_train + self.m_test != len(self.images):
            raise ValueError("m_train + m_test must equal the number of images")
        if self.m_train < 0 or self.m_test < 0:
            raise ValueError("split counts must be nonnegative")
        grids = {im.grid for im in self.images}
        if len(grids) > 1:
            raise ValueError("all samples must share one grid")

    @property
    def train(self) -> tuple[Image, ...]:
        return self.images[: self.m_train]

    @property
    def test(self) -> tuple[Image, ...]:
        return self.images[self.m_train :]


def _perturbed_ellipses(rng: np.random.Generator, scale: float) -> list[EllipseSpec]:
    out = []
    for e in SHEPP_LOGAN_ELLIPSES:
        dcx, dcy = rng.uniform(-0.05, 0.05, size=2) * scale
        fa, fb = 1.0 + rng.uniform(-0.10, 0.10, size=2) * scale
        fi = 1.0 + rng.uniform(-0.10, 0.10) * scale
        out.append(
            EllipseSpec(e.cx + dcx, e.cy + dcy, e.a * fa, e.b * fb, e.angle, e.intensity * fi)
        )
    return out


def generate_ensemble(
    grid: Grid, count: int, seed: int, scale: float = 1.0, m_train: int | None = None
) -> SampleSet:
    """Generate ``count`` phantom variations, deterministic in ``seed``.

    Each sample independently jitters the base ellipses: centers by up to
    +-0.05, semi-axes and intensities by up to +-10%, all scaled by
    ``scale`` (0 reproduces the base phantom exactly).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    images = tuple(rasterize(_perturbed_ellipses(rng, scale), grid) for _ in range(count))
    if m_train is None:
        m_train = count
    return SampleSet(images, seed, m_train, count - m_train)


def add_noise(f: Sinogram, level: float, seed: int) -> Sinogram:
    """Add i.i.d. Gaussian noise with std = level * rms(f), deterministic in seed."""
    if level < 0:
        raise ValueError("noise level must be >= 0")
    if level == 0:
        return Sinogram(f.n_theta, f.n_tau, f.values)
    rms = float(np.linalg.norm(f.values)) / math.sqrt(f.values.size)
    rng = np.random.default_rng(seed)
    eta = rng.standard_normal(f.values.size) * (level * rms)
    return Sinogram(f.n_theta, f.n_tau, f.values + eta)
