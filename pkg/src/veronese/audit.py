"""Topological checks and the consolidated claim audit.

Each audited claim becomes one entry with the stated expected value, the
measured value, and a verdict.  Claims whose numeric value depends on the
metric normalization (see the geometry module) are never adjudicated:
they carry the SCALE_DEPENDENT verdict together with the measured value
under both conventions, so nothing is silently dropped and nothing is
silently picked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import constants, construct, geometry, measure
from .quadmap import (evaluate, harmonicity_traces, norm_identity_residual,
                      real_restriction)
from .sampling import complex_sphere_points, sphere_points

MATCH = "MATCH"
MISMATCH = "MISMATCH"
SCALE_DEPENDENT = "SCALE_DEPENDENT"

POINTWISE_TOL = 1e-6
MC_REL_TOL = 1e-3
SEPARATION_FLOOR = 1e-9
MIN_SINGULAR_VALUE = 1e-8

# distinct deterministic sub-seeds per check family
_SEED_STRIDE = 0x9E3779B9


@dataclass(frozen=True)
class ClaimAuditEntry:
    claim_id: str
    statement: str
    expected: float
    measured: float
    abs_deviation: float
    verdict: str
    tolerance: float
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "claim_id": self.claim_id,
            "statement": self.statement,
            "expected": float(self.expected),
            "measured": float(self.measured),
            "abs_deviation": float(self.abs_deviation),
            "verdict": self.verdict,
            "tolerance": float(self.tolerance),
        }
        if self.details:
            out["details"] = {k: (float(v) if isinstance(v, (int, float)) else v)
                              for k, v in self.details.items()}
        return out


def _entry(claim_id, statement, expected, measured, tolerance,
           mode="equals", scale_dependent=False, details=None) -> ClaimAuditEntry:
    expected = float(expected)
    measured = float(measured)
    if mode == "equals":
        dev = abs(measured - expected)
    elif mode == "at_least":
        dev = max(0.0, expected - measured)
    else:
        raise ValueError(f"unknown comparison mode {mode!r}")
    if scale_dependent:
        verdict = SCALE_DEPENDENT
    else:
        verdict = MATCH if dev <= tolerance else MISMATCH
    return ClaimAuditEntry(
        claim_id=claim_id, statement=statement, expected=expected,
        measured=measured, abs_deviation=dev, verdict=verdict,
        tolerance=float(tolerance), details=dict(details or {}),
    )


def orbit_distance(x: np.ndarray, y: np.ndarray, field_name: str) -> np.ndarray:
    """Distance between fiber orbits, rowwise over two batches of points.

    Antipodal quotient: min(|x - y|, |x + y|).  Phase quotient: the minimum
    of |x - e^{i t} y| over all phases has the closed form
    sqrt(|x|^2 + |y|^2 - 2 |<x, y>|), which is used directly.
    """
    if field_name == "real":
        return np.minimum(np.linalg.norm(x - y, axis=1), np.linalg.norm(x + y, axis=1))
    nx = np.einsum("pi,pi->p", np.conj(x), x).real
    ny = np.einsum("pi,pi->p", np.conj(y), y).real
    cross = np.abs(np.einsum("pi,pi->p", np.conj(x), y))
    return np.sqrt(np.maximum(nx + ny - 2.0 * cross, 0.0))


def fiber_checks(n: int, field_name: str, pair_count: int, seed: int) -> dict:
    """Invariance, separation, and local-injectivity report for one level.

    (a) the image is constant along fibers (antipodal points or unit-phase
        orbits); (b) orbits separated by more than delta = 1e-3 r stay
        separated in the image, with the measured floor reported; (c) the
        differential restricted to the tangent/horizontal space has full
        rank at sampled points.
    """
    map_ = measure.build_map(n, field_name)
    r = constants.radius(n)

    inv_points = measure.quotient_samples(n, field_name, min(max(pair_count, 1), 200), seed)
    base_vals = evaluate(map_, inv_points)
    if field_name == "real":
        invariance = float(np.max(np.abs(evaluate(map_, -inv_points) - base_vals)))
    else:
        invariance = 0.0
        for j in range(1, 17):
            theta = 2.0 * math.pi * j / 17.0
            rot_vals = evaluate(map_, np.exp(1j * theta) * inv_points)
            invariance = max(invariance, float(np.max(np.abs(rot_vals - base_vals))))

    x = measure.quotient_samples(n, field_name, pair_count, seed + _SEED_STRIDE)
    y = measure.quotient_samples(n, field_name, pair_count, seed + 2 * _SEED_STRIDE)
    delta = 1e-3 * r
    separated = orbit_distance(x, y, field_name) > delta
    image_dist = np.linalg.norm(evaluate(map_, x) - evaluate(map_, y), axis=1)
    sep_dist = image_dist[separated]
    collisions = int(np.sum(sep_dist <= SEPARATION_FLOOR))

    frame_points = measure.quotient_samples(n, field_name, 50, seed + 3 * _SEED_STRIDE)
    bases = geometry._tangent_bases(frame_points, r, field_name)
    comps = map_.components
    if field_name == "real":
        tangent = 2.0 * np.einsum("kij,pi,pbj->pbk", comps, frame_points, bases)
    else:
        tangent = 2.0 * np.einsum(
            "kij,pi,pbj->pbk", comps, np.conj(frame_points), bases
        ).real
    smallest_singular = float(
        np.min(np.linalg.svd(np.swapaxes(tangent, 1, 2), compute_uv=False))
    )

    return {
        "n": n,
        "field": field_name,
        "invariance_residual": invariance,
        "pairs_tested": int(np.sum(separated)),
        "orbit_separation": delta,
        "collisions": collisions,
        "min_image_distance": float(np.min(sep_dist)) if sep_dist.size else float("inf"),
        "min_singular_value": smallest_singular,
    }


def diagram_check(n: int, sample_count: int, seed: int) -> dict:
    """Consistency of the level-n complex map with the real one and the sphere.

    (a) on real points the complex map reproduces the real map through the
        restriction indexing, and the paired imaginary components vanish;
    (b) at level 1 the complex map coincides with the closed-form Hopf map;
    (c) on-sphere points land on the unit sphere in both fields.
    """
    if not 1 <= n <= 4:
        raise ValueError("diagram check is maintained for levels 1..4")
    cmap = construct.build_complex(n)
    rmap = construct.build_real(n)
    sigma, zero_set = real_restriction(cmap, rmap)
    r = constants.radius(n)

    x = sphere_points(n + 1, sample_count, seed, radius=r)
    vals_c = evaluate(cmap, x.astype(complex))
    vals_r = evaluate(rmap, x)
    sig_cols = [sigma[j] for j in range(len(sigma))]
    restriction_residual = float(np.max(np.abs(vals_c[:, sig_cols] - vals_r)))
    zero_residual = float(np.max(np.abs(vals_c[:, zero_set]))) if zero_set else 0.0

    z = complex_sphere_points(n + 1, sample_count, seed + _SEED_STRIDE, radius=r)
    vals_cz = evaluate(cmap, z)
    unit_residual = max(
        float(np.max(np.abs(np.linalg.norm(vals_r, axis=1) - 1.0))),
        float(np.max(np.abs(np.linalg.norm(vals_cz, axis=1) - 1.0))),
    )

    out = {
        "n": n,
        "sigma": sigma,
        "zero_set": zero_set,
        "restriction_residual": restriction_residual,
        "zero_residual": zero_residual,
        "unit_image_residual": unit_residual,
    }
    if n == 1:
        zu = complex_sphere_points(2, sample_count, seed + 2 * _SEED_STRIDE)
        out["hopf_residual"] = float(
            np.max(np.abs(construct.hopf(zu) - evaluate(cmap, zu)))
        )
    return out


def _geometry_sweep(n: int, field_name: str, seed: int, points: int = 20) -> dict:
    map_ = measure.build_map(n, field_name)
    samples = measure.quotient_samples(n, field_name, points, seed)
    geo = geometry.curvature_field(map_, samples)
    lam = geo["lambda"]
    return {
        "lambda_mean": float(np.mean(lam)),
        "lambda_spread": float(np.ptp(lam)),
        "anisotropy_max": float(np.max(geo["anisotropy"])),
        "h_norm_max": float(np.max(geo["mean_curvature_norm"])),
        "alpha_sq_mean": float(np.mean(geo["alpha_norm_sq"])),
        "alpha_sq_spread": float(np.ptp(geo["alpha_norm_sq"])),
        "scalar_mean": float(np.mean(geo["scalar_curvature_gauss"])),
    }


def run_claim_audit(n_max_real: int = 6, n_max_complex: int = 4, seed: int = 0,
                    samples: int = 1000, homothety_tol: float = 1e-8) -> list[ClaimAuditEntry]:
    """Run every audited claim up to the requested levels; never aborts on MISMATCH.

    Deterministic given (seed, samples); entries come back sorted by claim id.
    """
    if not 1 <= n_max_real <= 6:
        raise ValueError("n_max_real must be in 1..6")
    if not 1 <= n_max_complex <= 4:
        raise ValueError("n_max_complex must be in 1..4")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    entries = []

    # --- exact sequence claims -------------------------------------------
    closed_vs_recursive = max(
        abs(constants.radius_pow4(k, "closed") - constants.radius_pow4(k, "recursive"))
        for k in range(1, constants.MAX_LEVEL + 1)
    )
    entries.append(_entry(
        "radius_closed_vs_recursive",
        "closed-form and recursive radius sequences agree exactly, levels 1..12",
        0.0, float(closed_vs_recursive), 0.0))
    entries.append(_entry(
        "radius_level3",
        "fourth power of the level-3 domain radius equals 8",
        8.0, float(constants.radius_pow4(3)), 0.0))

    dims_dev = 0
    n_prev, m_prev = 1, 2
    for k in range(1, constants.MAX_LEVEL + 1):
        n_dim, m_dim = constants.ambient_dims(k)
        if k > 1:
            n_prev, m_prev = n_prev + k + 1, m_prev + 2 * k + 1
        dims_dev = max(dims_dev, abs(n_dim - n_prev), abs(m_dim - m_prev))
    entries.append(_entry(
        "ambient_dimension_sequences",
        "real and complex ambient dimensions match their recursions, levels 1..12",
        0.0, float(dims_dev), 0.0))

    ratio_dev = max(
        abs(constants.step_constants(k)[0] / constants.step_constants(k)[1]
            - 2 * k * (k + 1))
        for k in range(2, constants.MAX_LEVEL + 1)
    )
    entries.append(_entry(
        "coefficient_ratio",
        "squared coefficient ratio a^2/b^2 equals 2n(n+1) exactly, levels 2..12",
        0.0, float(ratio_dev), 0.0))

    # --- pointwise identities per field ----------------------------------
    level_range = {"real": range(1, n_max_real + 1), "complex": range(1, n_max_complex + 1)}
    for field_name, levels in level_range.items():
        worst = max(
            norm_identity_residual(measure.build_map(k, field_name),
                                   constants.radius_pow4(k), samples,
                                   seed + 5 * _SEED_STRIDE + k)
            for k in levels
        )
        entries.append(_entry(
            f"norm_identity_{field_name}",
            "squared image norm equals squared domain norm squared over r^4",
            0.0, worst, 1e-12))

    trace_worst = max(
        float(np.max(np.abs(harmonicity_traces(builder(k)))))
        for builder, cap in ((construct.build_real, construct.REAL_LEVEL_CAP),
                             (construct.build_complex, construct.COMPLEX_LEVEL_CAP))
        for k in range(1, cap + 1)
    )
    entries.append(_entry(
        "harmonicity",
        "every coefficient matrix is trace free (all components harmonic)",
        0.0, trace_worst, 1e-12))

    # --- fiber structure ---------------------------------------------------
    for field_name, levels in level_range.items():
        reports = [fiber_checks(k, field_name, samples, seed + 7 * _SEED_STRIDE + k)
                   for k in levels]
        entries.append(_entry(
            f"fiber_invariance_{field_name}",
            "the image is constant along quotient fibers",
            0.0, max(rep["invariance_residual"] for rep in reports), 1e-12))
        entries.append(_entry(
            f"fiber_separation_{field_name}",
            "separated orbits have separated images (collision count)",
            0.0, float(sum(rep["collisions"] for rep in reports)), 0.0,
            details={"min_image_distance": min(rep["min_image_distance"] for rep in reports)}))
        entries.append(_entry(
            f"local_injectivity_{field_name}",
            "differential has full rank on tangent/horizontal spaces",
            MIN_SINGULAR_VALUE,
            min(rep["min_singular_value"] for rep in reports),
            0.0, mode="at_least"))

    # --- diagram compatibility ---------------------------------------------
    diag_reports = [diagram_check(k, min(samples, 200), seed + 11 * _SEED_STRIDE + k)
                    for k in range(1, min(n_max_complex, 4) + 1)]
    entries.append(_entry(
        "diagram_real_restriction",
        "the complex map restricted to real points reproduces the real map",
        0.0, max(rep["restriction_residual"] for rep in diag_reports), 1e-13))
    entries.append(_entry(
        "diagram_zero_components",
        "imaginary-part components vanish on real points",
        0.0, max(rep["zero_residual"] for rep in diag_reports), 1e-15))
    entries.append(_entry(
        "hopf_factorization",
        "the level-1 complex map is the Hopf map of the unit 3-sphere",
        0.0, diag_reports[0]["hopf_residual"], 1e-14))
    entries.append(_entry(
        "unit_image",
        "on-sphere points map onto the unit sphere",
        0.0, max(rep["unit_image_residual"] for rep in diag_reports), 1e-12))

    # --- differential geometry ----------------------------------------------
    sweeps = {}
    for field_name, levels in level_range.items():
        for k in levels:
            sweeps[(field_name, k)] = _geometry_sweep(
                k, field_name, seed + 13 * _SEED_STRIDE + k)

    homothety_dev = max(
        max(sw["anisotropy_max"], sw["lambda_spread"]) / sw["lambda_mean"]
        for sw in sweeps.values()
    )
    entries.append(_entry(
        "homothety",
        "the pullback metric is one constant multiple of the round metric",
        0.0, homothety_dev, homothety_tol))

    minimality_levels = [("real", k) for k in range(2, min(n_max_real, 5) + 1)]
    minimality_levels += [("complex", k) for k in range(2, min(n_max_complex, 3) + 1)]
    h_worst = max(sweeps[key]["h_norm_max"] for key in minimality_levels)
    entries.append(_entry(
        "minimality",
        "the mean curvature vector of every image vanishes",
        0.0, h_worst, POINTWISE_TOL))

    if n_max_real >= 2:
        lam2 = sweeps[("real", 2)]["lambda_mean"]
        entries.append(_entry(
            "isometry_pullback_level2",
            "stated isometric normalization reads pullback factor 1; the measured "
            "factor depends on the metric convention",
            1.0, lam2, POINTWISE_TOL, scale_dependent=True,
            details={"jacobian_oracle": 2.0}))

        gi_img = measure.global_invariants(2, "real", samples, seed + 17 * _SEED_STRIDE,
                                           metric="image")
        gi_dom = measure.global_invariants(2, "real", samples, seed + 17 * _SEED_STRIDE,
                                           metric="domain")
        entries.append(_entry(
            "veronese_scalar_curvature",
            "scalar curvature of the level-2 real image (stated 4/3); measured "
            "under both metric conventions",
            4.0 / 3.0, gi_img["scalar_curvature_mean"], POINTWISE_TOL,
            scale_dependent=True,
            details={"measured_image": gi_img["scalar_curvature_mean"],
                     "measured_domain": gi_dom["scalar_curvature_mean"]}))
        entries.append(_entry(
            "veronese_alpha_norm_sq",
            "squared norm of the second fundamental form of the level-2 real "
            "image (stated 2/3); measured under both metric conventions",
            2.0 / 3.0, gi_img["alpha_norm_sq_mean"], POINTWISE_TOL,
            scale_dependent=True,
            details={"measured_image": gi_img["alpha_norm_sq_mean"],
                     "measured_domain": gi_dom["alpha_norm_sq_mean"]}))
        entries.append(_entry(
            "pi_functional_level2",
            "total squared second fundamental form over the level-2 real "
            "quotient (stated 2 pi); measured under both metric conventions",
            2.0 * math.pi, gi_img["pi_functional"], MC_REL_TOL * 2.0 * math.pi,
            scale_dependent=True,
            details={"measured_image": gi_img["pi_functional"],
                     "measured_domain": gi_dom["pi_functional"]}))
        entries.append(_entry(
            "gauss_bonnet_level2",
            "total scalar curvature of the level-2 real quotient over 4 pi "
            "equals its Euler characteristic 1",
            1.0, gi_img["gauss_bonnet_ratio"], MC_REL_TOL,
            details={"domain_metric_value": gi_dom["gauss_bonnet_ratio"]}))

    if n_max_real >= 3:
        gi3 = measure.global_invariants(3, "real", samples, seed + 19 * _SEED_STRIDE,
                                        metric="image")
        expected_sigma = 6.0 * math.pi ** (4.0 / 3.0)
        entries.append(_entry(
            "sigma_quotient_level3",
            "normalized total scalar curvature of the level-3 real quotient "
            "equals 6 pi^(4/3)",
            expected_sigma, gi3["sigma_quotient"], 0.005 * expected_sigma))

    entries.sort(key=lambda e: e.claim_id)
    return entries


def hard_failures(entries) -> list[ClaimAuditEntry]:
    """Entries that fail outright; SCALE_DEPENDENT claims never count."""
    return [e for e in entries if e.verdict == MISMATCH]


def audit_to_dicts(entries) -> list[dict]:
    return [e.to_dict() for e in entries]
