"""Inductive builders for the quadratic sphere maps, plus the Hopf map.

Each level prepends the previous map scaled by 1/sqrt(n+1), then appends
the new cross terms (coefficient a) and the balance component
(coefficient b), everything under the same 1/sqrt(n+1).  Positive square
roots are used throughout; only the squares of the coefficients are
pinned down exactly, and any consistent sign choice gives a congruent
image.
"""

from __future__ import annotations

import math
from functools import cache

import numpy as np

from .constants import ambient_dims, step_constants
from .quadmap import HermitianQuadMap, RealQuadMap

REAL_LEVEL_CAP = 12     # N_12 = 89 ambient coordinates; stays cheap
COMPLEX_LEVEL_CAP = 8   # M_8 = 79


def _check_build_level(n, cap):
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValueError(f"level must be an integer, got {n!r}")
    if n < 1 or n > cap:
        raise ValueError(f"level must be in 1..{cap}, got {n}")


@cache
def build_real(n: int) -> RealQuadMap:
    """Level-n real map; base level sends (x0, x1) to (2 x0 x1, x0^2 - x1^2)."""
    _check_build_level(n, REAL_LEVEL_CAP)
    if n == 1:
        comps = np.array([[[0.0, 1.0], [1.0, 0.0]],
                          [[1.0, 0.0], [0.0, -1.0]]])
    else:
        prev = build_real(n - 1)
        a_sq, b_sq = step_constants(n)
        a, b = math.sqrt(float(a_sq)), math.sqrt(float(b_sq))
        inv = 1.0 / math.sqrt(n + 1.0)
        m = n + 1
        kp = prev.component_count
        comps = np.zeros((kp + n + 1, m, m))
        comps[:kp, :n, :n] = prev.components * inv
        half_cross = 0.5 * a * inv
        for k in range(n):
            comps[kp + k, n, k] = half_cross
            comps[kp + k, k, n] = half_cross
        diag = np.full(m, b * inv)
        diag[n] = -n * (b * inv)
        comps[kp + n] = np.diag(diag)
    comps.setflags(write=False)
    built = RealQuadMap(n=n, components=comps)
    assert built.component_count == ambient_dims(n)[0] + 1
    return built


@cache
def build_complex(n: int) -> HermitianQuadMap:
    """Level-n complex map; cross terms split into (real part, imaginary part) pairs.

    The base level is (Re 2 z0 conj(z1), Im 2 z0 conj(z1), |z0|^2 - |z1|^2);
    the inductive step conjugates the new variable in its cross terms, and
    that convention is kept verbatim at every level.
    """
    _check_build_level(n, COMPLEX_LEVEL_CAP)
    if n == 1:
        comps = np.zeros((3, 2, 2), dtype=complex)
        comps[0, 0, 1] = comps[0, 1, 0] = 1.0
        comps[1, 0, 1] = 1j
        comps[1, 1, 0] = -1j
        comps[2, 0, 0] = 1.0
        comps[2, 1, 1] = -1.0
    else:
        prev = build_complex(n - 1)
        a_sq, b_sq = step_constants(n)
        a, b = math.sqrt(float(a_sq)), math.sqrt(float(b_sq))
        inv = 1.0 / math.sqrt(n + 1.0)
        m = n + 1
        kp = prev.component_count
        comps = np.zeros((kp + 2 * n + 1, m, m), dtype=complex)
        comps[:kp, :n, :n] = prev.components * inv
        half_cross = 0.5 * a * inv
        for k in range(n):
            comps[kp + 2 * k, n, k] = half_cross
            comps[kp + 2 * k, k, n] = half_cross
            comps[kp + 2 * k + 1, n, k] = -1j * half_cross
            comps[kp + 2 * k + 1, k, n] = 1j * half_cross
        diag = np.full(m, b * inv, dtype=complex)
        diag[n] = -n * (b * inv)
        comps[kp + 2 * n] = np.diag(diag)
    comps.setflags(write=False)
    built = HermitianQuadMap(n=n, components=comps)
    assert built.component_count == ambient_dims(n)[1] + 1
    return built


def hopf(z) -> np.ndarray:
    """Closed-form circle-fibration map of the 3-sphere onto the 2-sphere.

    Accepts a single point of C^2 or a batch with points in the last axis;
    the formula is total, and continuity fixes the value (0, 0, 1) on the
    circle where the second coordinate vanishes.
    """
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0 or z.shape[-1] != 2:
        raise ValueError("hopf expects points of C^2")
    x0, y0 = z[..., 0].real, z[..., 0].imag
    x1, y1 = z[..., 1].real, z[..., 1].imag
    return np.stack(
        [2.0 * (x0 * x1 + y0 * y1),
         2.0 * (y0 * x1 - x0 * y1),
         x0 * x0 + y0 * y0 - x1 * x1 - y1 * y1],
        axis=-1,
    )
