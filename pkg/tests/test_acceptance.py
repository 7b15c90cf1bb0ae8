"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with `pytest -s tests/test_acceptance.py` to see them)
and enforcing its stated tolerance and runtime budget."""

import io
import math
import time
from contextlib import redirect_stdout

import numpy as np

from veronese import audit, constants, geometry, measure
from veronese.audit import SCALE_DEPENDENT, run_claim_audit
from veronese.cli import main as cli_main
from veronese.constants import ambient_dims, radius_pow4
from veronese.construct import build_complex, build_real, hopf
from veronese.quadmap import (evaluate, harmonicity_traces,
                              norm_identity_residual, real_restriction)
from veronese.sampling import complex_sphere_points, sphere_points


class Criterion:
    def __init__(self, name, budget_seconds=None):
        self.name = name
        self.budget = budget_seconds
        self.failures = []

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            print(f"[acceptance] {self.name}: FAIL ({exc})")
            return False
        if self.budget is not None and elapsed > self.budget:
            self.failures.append(f"runtime {elapsed:.2f}s exceeds {self.budget}s")
        status = "PASS" if not self.failures else "FAIL"
        print(f"[acceptance] {self.name}: {status} ({elapsed:.2f}s)"
              + (f" -- {'; '.join(self.failures)}" if self.failures else ""))
        assert not self.failures, f"{self.name}: {self.failures}"
        return False


def build(field, n):
    return build_real(n) if field == "real" else build_complex(n)


def on_sphere_points(field, n, count, seed):
    r = constants.radius(n)
    if field == "real":
        return sphere_points(n + 1, count, seed, radius=r)
    return complex_sphere_points(n + 1, count, seed, radius=r)


def test_criterion_01_exact_sequences():
    with Criterion("01 exact-sequences", budget_seconds=1.0) as c:
        for n in range(1, constants.MAX_LEVEL + 1):
            c.check(radius_pow4(n, "closed") == radius_pow4(n, "recursive"),
                    f"radius modes disagree at level {n}")
            c.check(ambient_dims(n) == (n * (n + 3) // 2 - 1, (n + 1) ** 2 - 2),
                    f"ambient dims wrong at level {n}")
        c.check(radius_pow4(3) == 8, "level-3 radius^4 is not 8")


def test_criterion_02_norm_identity():
    with Criterion("02 norm-identity", budget_seconds=5.0) as c:
        for field, cap in (("real", 6), ("complex", 4)):
            for n in range(1, cap + 1):
                res = norm_identity_residual(build(field, n), radius_pow4(n),
                                             1000, seed=1000 + n)
                c.check(res < 1e-12, f"{field} level {n} residual {res:.2e}")


def test_criterion_03_harmonicity():
    with Criterion("03 harmonicity", budget_seconds=1.0) as c:
        for field, cap in (("real", 12), ("complex", 8)):
            for n in range(1, cap + 1):
                worst = float(np.max(np.abs(harmonicity_traces(build(field, n)))))
                c.check(worst < 1e-12, f"{field} level {n} trace {worst:.2e}")


def test_criterion_04_fiber_structure():
    with Criterion("04 fiber-structure", budget_seconds=10.0) as c:
        for field, cap in (("real", 4), ("complex", 3)):
            for n in range(1, cap + 1):
                rep = audit.fiber_checks(n, field, 10_000, seed=2000 + n)
                c.check(rep["invariance_residual"] < 1e-12,
                        f"{field} level {n} invariance {rep['invariance_residual']:.2e}")
                c.check(rep["collisions"] == 0,
                        f"{field} level {n} has {rep['collisions']} collisions")
                c.check(rep["min_singular_value"] > 1e-8,
                        f"{field} level {n} singular value {rep['min_singular_value']:.2e}")


def test_criterion_05_diagram():
    with Criterion("05 diagram", budget_seconds=2.0) as c:
        for n in range(1, 5):
            rep = audit.diagram_check(n, 100, seed=3000 + n)
            c.check(rep["restriction_residual"] < 1e-13,
                    f"level {n} restriction {rep['restriction_residual']:.2e}")
        zu = complex_sphere_points(2, 100, seed=3100)
        hopf_res = float(np.max(np.abs(hopf(zu) - evaluate(build_complex(1), zu))))
        c.check(hopf_res < 1e-14, f"hopf residual {hopf_res:.2e}")


def test_criterion_06_homothety():
    with Criterion("06 homothety") as c:
        for field, cap in (("real", 6), ("complex", 4)):
            for n in range(1, cap + 1):
                pts = on_sphere_points(field, n, 20, seed=4000 + n)
                lams = []
                for p in pts:
                    frm = geometry.frame(p, field)
                    lam, anis = geometry.pullback_factor(build(field, n), frm)
                    lams.append(lam)
                    c.check(anis / lam < 1e-8,
                            f"{field} level {n} anisotropy ratio {anis / lam:.2e}")
                c.check(np.ptp(lams) < 1e-8,
                        f"{field} level {n} lambda spread {np.ptp(lams):.2e}")
                # independent finite-difference oracle at one point
                frm = geometry.frame(pts[0], field)
                h = 1e-5
                t = np.stack([(evaluate(build(field, n), frm.base_point + h * v)
                               - evaluate(build(field, n), frm.base_point - h * v)) / (2 * h)
                              for v in frm.basis])
                lam_fd = float(np.trace(t @ t.T)) / frm.dim
                c.check(abs(lams[0] - lam_fd) < 1e-8,
                        f"{field} level {n} oracle gap {abs(lams[0] - lam_fd):.2e}")
        entries = {e.claim_id: e for e in run_claim_audit(2, 1, seed=0, samples=200)}
        iso = entries["isometry_pullback_level2"]
        c.check(iso.verdict == SCALE_DEPENDENT, "isometry claim not marked scale dependent")
        c.check(abs(iso.measured - 2.0) < 1e-8,
                f"level-2 pullback factor {iso.measured} is not the oracle value 2")


def test_criterion_07_minimality():
    with Criterion("07 minimality", budget_seconds=30.0) as c:
        for field, cap in (("real", 5), ("complex", 3)):
            for n in range(1, cap + 1):
                pts = on_sphere_points(field, n, 20, seed=5000 + n)
                h_max = float(np.max(
                    geometry.curvature_field(build(field, n), pts)["mean_curvature_norm"]))
                c.check(h_max < 1e-6, f"{field} level {n} |H| {h_max:.2e}")


def test_criterion_08_gauss_consistency():
    with Criterion("08 gauss-consistency") as c:
        for n in range(2, 6):
            pts = on_sphere_points("real", n, 20, seed=6000 + n)
            geo = geometry.curvature_field(build_real(n), pts)
            rho_sq = geo["lambda"] * constants.radius(n) ** 2
            gap = float(np.max(np.abs(geo["scalar_curvature_gauss"]
                                      - n * (n - 1) / rho_sq)))
            c.check(gap < 1e-6, f"level {n} Gauss gap {gap:.2e}")
            spread = float(np.ptp(geo["alpha_norm_sq"]))
            c.check(spread < 1e-7, f"level {n} |alpha|^2 spread {spread:.2e}")


def test_criterion_09_scale_invariant_numbers():
    with Criterion("09 scale-invariant-numbers", budget_seconds=60.0) as c:
        gi2 = measure.global_invariants(2, "real", 100_000, seed=7000)
        c.check(abs(gi2["gauss_bonnet_ratio"] - 1.0) < 1e-3,
                f"Gauss-Bonnet ratio {gi2['gauss_bonnet_ratio']}")
        gi3 = measure.global_invariants(3, "real", 100_000, seed=7001)
        target = 6 * math.pi ** (4.0 / 3.0)
        c.check(abs(gi3["sigma_quotient"] - target) < 0.005 * target,
                f"sigma quotient {gi3['sigma_quotient']} vs {target}")


def test_criterion_10_normalization_dependent_numbers():
    with Criterion("10 normalization-dependent-numbers") as c:
        entries = {e.claim_id: e for e in run_claim_audit(2, 1, seed=0, samples=2000)}
        for claim_id, image_val, domain_val, tol in (
                ("veronese_scalar_curvature", 2 / 3, 4 / 3, 1e-6),
                ("veronese_alpha_norm_sq", 4 / 3, 2 / 3, 1e-6),
                ("pi_functional_level2", 8 * math.pi, 2 * math.pi, 1e-6)):
            entry = entries.get(claim_id)
            c.check(entry is not None, f"{claim_id} missing from the audit")
            if entry is None:
                continue
            c.check(entry.verdict == SCALE_DEPENDENT,
                    f"{claim_id} verdict {entry.verdict}")
            c.check(abs(entry.details["measured_image"] - image_val) <= tol * max(1, image_val),
                    f"{claim_id} image value {entry.details['measured_image']}")
            c.check(abs(entry.details["measured_domain"] - domain_val) <= tol * max(1, domain_val),
                    f"{claim_id} domain value {entry.details['measured_domain']}")


def test_criterion_11_laplace_eigenvalue():
    with Criterion("11 laplace-eigenvalue") as c:
        for field in ("real", "complex"):
            for n in range(1, 4):
                r = constants.radius(n)
                for p in on_sphere_points(field, n, 5, seed=8000 + n):
                    res = geometry.laplace_residual(build(field, n), p, r)
                    c.check(res < 1e-4, f"{field} level {n} residual {res:.2e}")


def test_criterion_12_determinism():
    with Criterion("12 determinism") as c:
        for fmt in ("table", "json"):
            outputs = []
            for _ in range(2):
                buf = io.StringIO()
                with redirect_stdout(buf):
                    code = cli_main(["verify", "--n-max", "3", "--samples", "500",
                                     "--seed", "11", "--format", fmt])
                c.check(code == 0, f"verify exit code {code}")
                outputs.append(buf.getvalue())
            c.check(outputs[0] == outputs[1], f"{fmt} outputs differ between runs")
        c.check(run_claim_audit(3, 2, seed=5, samples=300)
                == run_claim_audit(3, 2, seed=5, samples=300),
                "audit entries differ between identical runs")
