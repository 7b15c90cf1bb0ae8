"""Quadratic polynomial maps stored as stacks of coefficient matrices.

A real map sends x to the vector of quadratic forms x^T A_k x, one
symmetric matrix A_k per ambient coordinate.  A complex map sends z to
the vector of Hermitian forms z* A_k z, which are real-valued; pairs of
such components encode the real and imaginary parts of the complex
cross terms of the construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .constants import ambient_dims, radius_pow4, rational_str
from .sampling import ball_points, complex_ball_points

ZERO_COMPONENT_TOL = 1e-12   # smallest genuine coefficient across all levels is ~1e-3
RESTRICTION_MATCH_TOL = 1e-14


class StructuralError(RuntimeError):
    """A built map violates structure the construction is supposed to guarantee."""


@dataclass(frozen=True)
class RealQuadMap:
    """Map R^{n+1} -> R^K by K symmetric quadratic forms."""

    n: int
    components: np.ndarray  # (K, n+1, n+1) float64, each exactly symmetric

    field = "real"

    def __post_init__(self):
        comps = np.ascontiguousarray(np.asarray(self.components, dtype=float))
        if comps.ndim != 3 or comps.shape[1] != comps.shape[2]:
            raise ValueError("components must be a stack of square matrices")
        if comps.shape[1] != self.n + 1:
            raise ValueError(f"matrices must be {self.n + 1}x{self.n + 1} at level {self.n}")
        if not np.array_equal(comps, np.swapaxes(comps, 1, 2)):
            raise ValueError("coefficient matrices must be exactly symmetric")
        object.__setattr__(self, "components", comps)

    def __call__(self, point):
        return evaluate(self, point)

    @property
    def component_count(self) -> int:
        return self.components.shape[0]

    @property
    def domain_dim(self) -> int:
        return self.n + 1


@dataclass(frozen=True)
class HermitianQuadMap:
    """Map C^{n+1} -> R^K by K Hermitian forms (each value is real)."""

    n: int
    components: np.ndarray  # (K, n+1, n+1) complex128, each Hermitian

    field = "complex"

    def __post_init__(self):
        comps = np.ascontiguousarray(np.asarray(self.components, dtype=complex))
        if comps.ndim != 3 or comps.shape[1] != comps.shape[2]:
            raise ValueError("components must be a stack of square matrices")
        if comps.shape[1] != self.n + 1:
            raise ValueError(f"matrices must be {self.n + 1}x{self.n + 1} at level {self.n}")
        herm_dev = np.max(np.abs(comps - np.conj(np.swapaxes(comps, 1, 2))))
        if herm_dev > 1e-14 * max(1.0, float(np.max(np.abs(comps)))):
            raise ValueError("coefficient matrices must be Hermitian")
        object.__setattr__(self, "components", comps)

    def __call__(self, point):
        return evaluate(self, point)

    @property
    def component_count(self) -> int:
        return self.components.shape[0]

    @property
    def domain_dim(self) -> int:
        return self.n + 1


QuadMap = RealQuadMap | HermitianQuadMap


def _as_domain_points(map_, point):
    if map_.field == "real":
        if np.iscomplexobj(point):
            raise ValueError("real map expects real coordinates")
        pts = np.asarray(point, dtype=float)
    else:
        pts = np.asarray(point, dtype=complex)
    if pts.ndim == 0 or pts.shape[-1] != map_.domain_dim:
        raise ValueError(
            f"point dimension {pts.shape[-1] if pts.ndim else 0} does not match "
            f"domain dimension {map_.domain_dim}"
        )
    return pts


def evaluate(map_: QuadMap, point) -> np.ndarray:
    """Evaluate the map; accepts a single point or a batch with points in the last axis."""
    pts = _as_domain_points(map_, point)
    if map_.field == "real":
        return np.einsum("...i,kij,...j->...k", pts, map_.components, pts)
    return np.einsum("...i,kij,...j->...k", np.conj(pts), map_.components, pts).real


def jacobian(map_: QuadMap, point) -> np.ndarray:
    """Differential at a single point; rows are ambient components.

    Real maps: row k is 2 A_k x, one column per domain coordinate.
    Complex maps: the domain is read as real coordinates
    (x_0..x_n, y_0..y_n) for z = x + iy, giving rows (2 Re A_k z, 2 Im A_k z).
    Exact analytic formulas; nothing is differenced.
    """
    pts = _as_domain_points(map_, point)
    if pts.ndim != 1:
        raise ValueError("jacobian expects a single point")
    if map_.field == "real":
        return 2.0 * np.einsum("kij,j->ki", map_.components, pts)
    u = np.einsum("kij,j->ki", map_.components, pts)
    return 2.0 * np.concatenate([u.real, u.imag], axis=1)


def harmonicity_traces(map_: QuadMap) -> np.ndarray:
    """Trace of every coefficient matrix; all zero iff all components are harmonic."""
    tr = np.trace(map_.components, axis1=1, axis2=2)
    return tr.real if map_.field == "complex" else tr


def norm_identity_residual(map_: QuadMap, radius_pow4_value, sample_count: int, seed: int) -> float:
    """Largest deviation of |map(x)|^2 from |x|^4 / r^4 on random ball points.

    Points are drawn uniformly from the ball of radius 2 around the
    origin (real or complex according to the map), so the check covers
    the identity as one between polynomials, not just on the sphere: a
    small residual at random points is a probabilistic certificate that
    the degree-4 polynomial identity holds.
    """
    r4 = float(radius_pow4_value)
    m = map_.domain_dim
    if map_.field == "real":
        pts = ball_points(m, sample_count, seed, radius=2.0)
        sq = np.einsum("pi,pi->p", pts, pts)
    else:
        pts = complex_ball_points(m, sample_count, seed, radius=2.0)
        sq = np.einsum("pi,pi->p", np.conj(pts), pts).real
    vals = evaluate(map_, pts)
    lhs = np.einsum("pk,pk->p", vals, vals)
    return float(np.max(np.abs(lhs - sq * sq / r4)))


def real_restriction(cmap: HermitianQuadMap, rmap: RealQuadMap | None = None):
    """Match the complex map against its restriction to real vectors.

    On real input the imaginary-part components vanish identically (their
    coefficient matrices have zero real part) and the surviving components,
    in stored order, must reproduce the real map of the same level.  Returns
    (sigma, zero_set): sigma maps real component index j to the complex
    component index carrying the same form, zero_set lists the components
    that vanish on real points.  If rmap is given, the matched coefficient
    matrices are compared entry by entry; any inconsistency raises
    StructuralError since it can only come from a construction-ordering bug.
    """
    comps = cmap.components
    scale = max(1.0, float(np.max(np.abs(comps))))
    re_mag = np.max(np.abs(comps.real), axis=(1, 2))
    zero_set = [int(k) for k in np.flatnonzero(re_mag <= ZERO_COMPONENT_TOL * scale)]
    survivors = [int(k) for k in np.flatnonzero(re_mag > ZERO_COMPONENT_TOL * scale)]

    expected_real = ambient_dims(cmap.n)[0] + 1
    if len(survivors) != expected_real:
        raise StructuralError(
            f"found {len(survivors)} nonvanishing components on real points, "
            f"expected {expected_real}"
        )
    sigma = {j: k for j, k in enumerate(survivors)}

    if rmap is not None:
        if rmap.n != cmap.n:
            raise ValueError("real and complex maps must be at the same level")
        if rmap.component_count != expected_real:
            raise StructuralError("real map has unexpected component count")
        for j, k in sigma.items():
            dev = float(np.max(np.abs(comps[k].real - rmap.components[j])))
            if dev > RESTRICTION_MATCH_TOL * scale:
                raise StructuralError(
                    f"complex component {k} does not restrict to real component {j} "
                    f"(deviation {dev:.3e})"
                )
    return sigma, zero_set


def to_json_dict(map_: QuadMap) -> dict:
    """JSON payload: matrices flattened row-major, complex entries as [re, im]."""
    if map_.field == "real":
        comp_list = [[float(v) for v in mat.reshape(-1)] for mat in map_.components]
    else:
        comp_list = [[[float(v.real), float(v.imag)] for v in mat.reshape(-1)]
                     for mat in map_.components]
    return {
        "field": map_.field,
        "n": map_.n,
        "ambient_dim": map_.component_count - 1,
        "radius_pow4": rational_str(radius_pow4(map_.n)),
        "components": comp_list,
    }


def to_json(map_: QuadMap, indent=2) -> str:
    return json.dumps(to_json_dict(map_), indent=indent)


def exact_norm_identity_deviation(map_: QuadMap, points) -> Fraction:
    """Evaluate |map(x)|^2 - |x|^4 / r^4 in exact rational arithmetic.

    Coefficients are reinterpreted as the exact rationals the stored doubles
    denote, so the only residue measured here is coefficient rounding; no
    floating-point evaluation error can enter.  Points must be rational
    (Fraction entries for real maps, (Fraction, Fraction) pairs for complex).
    """
    r4 = radius_pow4(map_.n)
    worst = Fraction(0)
    for pt in points:
        if map_.field == "real":
            xs = [Fraction(v) for v in pt]
            sq = sum(v * v for v in xs)
            total = Fraction(0)
            for mat in map_.components:
                val = Fraction(0)
                for i, xi in enumerate(xs):
                    for j, xj in enumerate(xs):
                        val += Fraction(float(mat[i, j])) * xi * xj
                total += val * val
        else:
            zr = [Fraction(a) for a, _ in pt]
            zi = [Fraction(b) for _, b in pt]
            sq = sum(a * a + b * b for a, b in zip(zr, zi))
            total = Fraction(0)
            for mat in map_.components:
                val = Fraction(0)
                for i in range(len(zr)):
                    for j in range(len(zr)):
                        are = Fraction(float(mat[i, j].real))
                        aim = Fraction(float(mat[i, j].imag))
                        # real part of A_ij conj(z_i) z_j
                        val += are * (zr[i] * zr[j] + zi[i] * zi[j])
                        val += aim * (zi[i] * zr[j] - zr[i] * zi[j])
                total += val * val
        dev = abs(total - sq * sq / r4)
        worst = max(worst, dev)
    return worst
