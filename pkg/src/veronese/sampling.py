"""Deterministic random points on spheres and balls.

All draws go through a Philox counter-based generator keyed by the
caller's seed, so identical (seed, count) always reproduces the same
points bit for bit, independently of global numpy state.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=int(seed) & _MASK64))


def sphere_points(dim: int, count: int, seed: int, radius: float = 1.0) -> np.ndarray:
    """Uniform points on the sphere of the given radius in R^dim, shape (count, dim)."""
    if dim < 1 or count < 1:
        raise ValueError("dim and count must be positive")
    x = generator(seed).standard_normal((count, dim))
    nrm = np.linalg.norm(x, axis=1, keepdims=True)
    nrm[nrm == 0.0] = 1.0
    return radius * x / nrm


def ball_points(dim: int, count: int, seed: int, radius: float = 1.0) -> np.ndarray:
    """Uniform points in the solid ball of the given radius in R^dim."""
    if dim < 1 or count < 1:
        raise ValueError("dim and count must be positive")
    g = generator(seed)
    x = g.standard_normal((count, dim))
    nrm = np.linalg.norm(x, axis=1, keepdims=True)
    nrm[nrm == 0.0] = 1.0
    u = g.random((count, 1))
    return radius * u ** (1.0 / dim) * x / nrm


def complex_sphere_points(cdim: int, count: int, seed: int, radius: float = 1.0) -> np.ndarray:
    """Uniform points on the real sphere of C^cdim = R^(2 cdim), as complex rows."""
    x = sphere_points(2 * cdim, count, seed, radius)
    return x[:, :cdim] + 1j * x[:, cdim:]


def complex_ball_points(cdim: int, count: int, seed: int, radius: float = 1.0) -> np.ndarray:
    x = ball_points(2 * cdim, count, seed, radius)
    return x[:, :cdim] + 1j * x[:, cdim:]
