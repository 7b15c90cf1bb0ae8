"""Volumes, Monte-Carlo integration over the projective quotients, and
the global invariants of the embedded images.

The quotient of the level-n domain sphere is sampled by pushing uniform
sphere samples through the quotient map (uniform upstairs is uniform
downstairs for both the antipodal and the phase action).  Integrals are
taken against a chosen metric normalization:

  image metric   -- the measured induced metric of the embedded image;
                    the volume element carries the homothety factor.
  domain metric  -- the quotient of the round domain sphere as is.

The two differ by the constant homothety factor of the embedding, and
everything normalization-dependent is reported explicitly per convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import constants, construct, geometry
from .sampling import complex_sphere_points, sphere_points

INVARIANCE_TOL = 1e-10
_PHASES = (math.pi / 3.0, 1.0, 2.5)


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    std_error: float
    sample_count: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "value": float(self.value),
            "std_error": float(self.std_error),
            "sample_count": int(self.sample_count),
            "seed": int(self.seed),
        }


def sphere_volume(dim: int, r: float) -> float:
    """Volume of the dim-sphere of radius r: 2 pi^((dim+1)/2) r^dim / Gamma((dim+1)/2)."""
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if r <= 0:
        raise ValueError("radius must be positive")
    return 2.0 * math.pi ** ((dim + 1) / 2.0) * r**dim / math.gamma((dim + 1) / 2.0)


def build_map(n: int, field: str):
    if field == "real":
        return construct.build_real(n)
    if field == "complex":
        return construct.build_complex(n)
    raise ValueError(f"field must be 'real' or 'complex', got {field!r}")


def quotient_samples(n: int, field: str, count: int, seed: int) -> np.ndarray:
    """Uniform samples on the level-n domain sphere (representatives of the quotient)."""
    r = constants.radius(n)
    if field == "real":
        return sphere_points(n + 1, count, seed, radius=r)
    if field == "complex":
        return complex_sphere_points(n + 1, count, seed, radius=r)
    raise ValueError(f"field must be 'real' or 'complex', got {field!r}")


def homothety_factor(n: int, field: str) -> float:
    """Pullback factor of the level-n map, measured at a canonical point."""
    map_ = build_map(n, field)
    r = constants.radius(n)
    base = np.zeros(n + 1, dtype=float if field == "real" else complex)
    base[0] = r
    lam, _ = geometry.pullback_factor(map_, geometry.frame(base, field))
    return lam


def _metric_scale_total(lam: float, metric: str, metric_scale: float) -> float:
    """Multiple t such that the reporting metric is t times the measured image metric."""
    if metric == "image":
        return metric_scale
    if metric == "domain":
        return metric_scale / lam
    raise ValueError(f"metric must be 'image' or 'domain', got {metric!r}")


def quotient_volume_factor(n: int, field: str, lam: float, metric: str = "image",
                           metric_scale: float = 1.0) -> float:
    """Total quotient volume under the chosen normalization.

    The round quotient volume is Vol(S^n(r))/2 for the antipodal quotient and
    Vol(S^{2n+1}(r))/(2 pi r) for the phase quotient; scaling the metric by a
    constant multiplies it by that constant to the power d/2.
    """
    r = constants.radius(n)
    if field == "real":
        base, d = sphere_volume(n, r) / 2.0, n
    elif field == "complex":
        base, d = sphere_volume(2 * n + 1, r) / (2.0 * math.pi * r), 2 * n
    else:
        raise ValueError(f"field must be 'real' or 'complex', got {field!r}")
    t = _metric_scale_total(lam, metric, metric_scale)
    return base * (lam * t) ** (d / 2.0)


def _check_fiber_invariance(f, samples: np.ndarray, field: str):
    spot = samples[: min(8, samples.shape[0])]
    ref = np.asarray(f(spot), dtype=float)
    scale = max(1.0, float(np.max(np.abs(ref))))
    if field == "real":
        dev = float(np.max(np.abs(np.asarray(f(-spot), dtype=float) - ref)))
    else:
        dev = 0.0
        for theta in _PHASES:
            rot = np.exp(1j * theta) * spot
            dev = max(dev, float(np.max(np.abs(np.asarray(f(rot), dtype=float) - ref))))
    if dev > INVARIANCE_TOL * scale:
        raise ValueError(
            f"integrand is not invariant under the fiber action (deviation {dev:.3e})"
        )


def _estimate(values: np.ndarray, factor: float, sample_count: int, seed: int) -> IntegralEstimate:
    values = np.asarray(values, dtype=float)
    first = float(values[0])
    spread = float(np.ptp(values))
    mean = float(np.mean(values))
    if spread <= 1e-12 * max(1.0, abs(first)):
        # constant integrand: closed-form volume times the constant; the
        # Monte-Carlo mean stays as a cross-check
        if abs(mean - first) > 1e-9 * max(1.0, abs(first)):
            raise RuntimeError("constant integrand failed its Monte-Carlo cross-check")
        return IntegralEstimate(factor * first, 0.0, sample_count, seed)
    sd = float(np.std(values, ddof=1)) / math.sqrt(sample_count) if sample_count > 1 else 0.0
    return IntegralEstimate(factor * mean, factor * sd, sample_count, seed)


def integrate_quotient(f, n: int, field: str, sample_count: int, seed: int,
                       metric: str = "image", metric_scale: float = 1.0) -> IntegralEstimate:
    """Integral of a fiber-invariant scalar function over the level-n quotient.

    f must accept a (count, n+1) batch of domain sphere points and return a
    (count,) array; invariance under the fiber action is spot-checked and a
    violation is a precondition error.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    samples = quotient_samples(n, field, sample_count, seed)
    _check_fiber_invariance(f, samples, field)
    lam = homothety_factor(n, field)
    factor = quotient_volume_factor(n, field, lam, metric, metric_scale)
    values = np.asarray(f(samples), dtype=float)
    if values.shape != (sample_count,):
        raise ValueError("integrand must return one scalar per sample")
    return _estimate(values, factor, sample_count, seed)


def global_invariants(n: int, field: str, sample_count: int, seed: int,
                      metric: str = "image", metric_scale: float = 1.0) -> dict:
    """Global invariants of the level-n quotient under the chosen normalization.

    Always reports the total scalar curvature, the integral of |alpha|^2
    (the bending-energy functional), the quotient volume and the homothety
    factor; the Gauss-Bonnet ratio appears for the real level-2 surface and
    the normalized total scalar curvature (sigma quotient) for the real
    level-3 space.  metric_scale multiplies the reporting metric by a
    constant and exists so scale invariance can be demonstrated directly.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    map_ = build_map(n, field)
    samples = quotient_samples(n, field, sample_count, seed)
    lam = homothety_factor(n, field)
    t = _metric_scale_total(lam, metric, metric_scale)
    factor = quotient_volume_factor(n, field, lam, metric, metric_scale)
    d = n if field == "real" else 2 * n

    geo = geometry.curvature_field(map_, samples)
    scalar_vals = geo["scalar_curvature_gauss"] / t
    h_sq = geo["mean_curvature_norm"] ** 2
    alpha_vals = d * (d - 1) + h_sq - scalar_vals

    volume = _estimate(np.ones(sample_count), factor, sample_count, seed)
    total_scalar = _estimate(scalar_vals, factor, sample_count, seed)
    pi_functional = _estimate(alpha_vals, factor, sample_count, seed)

    out = {
        "n": n,
        "field": field,
        "metric": metric,
        "lambda_bar": lam,
        "volume": volume.value,
        "total_scalar": total_scalar.value,
        "total_scalar_std_error": total_scalar.std_error,
        "pi_functional": pi_functional.value,
        "pi_functional_std_error": pi_functional.std_error,
        "scalar_curvature_mean": float(np.mean(scalar_vals)),
        "alpha_norm_sq_mean": float(np.mean(alpha_vals)),
    }
    if field == "real" and n == 2:
        out["gauss_bonnet_ratio"] = total_scalar.value / (4.0 * math.pi)
    if field == "real" and n == 3:
        out["sigma_quotient"] = total_scalar.value / volume.value ** (1.0 / 3.0)
    return out
