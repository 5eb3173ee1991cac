"""Reproducible test inputs: random graphs and fields."""

from __future__ import annotations

import numpy as np

from .core import ScalarField
from .graph import ExplicitGraph, GridGraph3


def erdos_renyi(n: int, p: float, rng: np.random.Generator) -> ExplicitGraph:
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return ExplicitGraph(n, np.column_stack([iu[keep], ju[keep]]))


def random_values(n: int, rng: np.random.Generator, ties: bool = False) -> np.ndarray:
    """Uniform values; with ``ties`` drawn from a handful of integers."""
    if ties:
        return rng.integers(0, 4, size=n).astype(np.float64)
    return rng.random(n)


def random_smooth_field(shape: tuple[int, int, int], rng: np.random.Generator, sigma: float = 2.0) -> np.ndarray:
    """White noise low-pass filtered with a periodic Gaussian kernel in
    Fourier space.  Returned flat in x-fastest order."""
    nx, ny, nz = shape
    noise = rng.standard_normal((nz, ny, nx))
    kz = np.fft.fftfreq(nz)[:, None, None]
    ky = np.fft.fftfreq(ny)[None, :, None]
    kx = np.fft.rfftfreq(nx)[None, None, :]
    k2 = kx**2 + ky**2 + kz**2
    spec = np.fft.rfftn(noise) * np.exp(-2.0 * (np.pi * sigma) ** 2 * k2)
    return np.fft.irfftn(spec, s=(nz, ny, nx), axes=(0, 1, 2)).reshape(-1)


def bump_centers(k: int, shape: tuple[int, int, int], rng: np.random.Generator, min_sep: float) -> np.ndarray:
    """``k`` integer lattice points pairwise at least ``min_sep`` apart,
    away from the boundary."""
    margin = 3
    hi = np.array(shape) - margin
    centers = []
    for _ in range(100000):
        c = rng.integers(margin, hi)
        if all(np.linalg.norm(c - d) >= min_sep for d in centers):
            centers.append(c)
            if len(centers) == k:
                return np.array(centers)
    raise RuntimeError(f"could not place {k} centers {min_sep} apart in {shape}")


def gaussian_bumps(shape: tuple[int, int, int], k: int, rng: np.random.Generator,
                   sigma: float = 4.0, min_sep: float = 14.0) -> np.ndarray:
    """Pointwise maximum of ``k`` Gaussian bumps over a zero background.

    Centres sit on lattice points and amplitudes lie in [1, 2], so each centre
    is a strict local maximum and no other vertex is.  ``sigma`` is large
    enough that no value underflows to the background, which keeps the field
    free of ties.
    """
    nx, ny, nz = shape
    centers = bump_centers(k, shape, rng, min_sep)
    amps = rng.uniform(1.0, 2.0, size=k)
    z, y, x = np.meshgrid(np.arange(nz), np.arange(ny), np.arange(nx), indexing="ij")
    out = np.zeros((nz, ny, nx))
    for (cx, cy, cz), a in zip(centers, amps):
        d2 = (x - cx) ** 2 + (y - cy) ** 2 + (z - cz) ** 2
        np.maximum(out, a * np.exp(-d2 / (2.0 * sigma**2)), out=out)
    return out.reshape(-1)


def random_grid(rng: np.random.Generator, max_extent: int = 32, ties: bool = False) -> tuple[ScalarField, GridGraph3]:
    g = GridGraph3(*rng.integers(1, max_extent + 1, size=3))
    return ScalarField(random_values(g.n, rng, ties)), g
