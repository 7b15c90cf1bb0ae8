import math

import numpy as np
import pytest

from veronese import measure
from veronese.measure import (IntegralEstimate, global_invariants,
                              integrate_quotient, sphere_volume)


def ones(points):
    return np.ones(points.shape[0])


def test_sphere_volume_values():
    assert sphere_volume(1, 1.0) == pytest.approx(2 * math.pi)
    assert sphere_volume(3, 1.0) == pytest.approx(2 * math.pi**2)
    assert sphere_volume(2, math.sqrt(1.5)) == pytest.approx(6 * math.pi)


def test_sphere_volume_domain_errors():
    with pytest.raises(ValueError):
        sphere_volume(0, 1.0)
    with pytest.raises(ValueError):
        sphere_volume(2, 0.0)


@pytest.mark.parametrize("n,field,expected", [
    (1, "real", 2 * math.pi),    # image circle has length 2 pi
    (2, "real", 6 * math.pi),
    (1, "complex", 4 * math.pi),  # image 2-sphere has area 4 pi
])
def test_quotient_volumes(n, field, expected):
    est = integrate_quotient(ones, n, field, 2000, seed=0)
    assert est.value == pytest.approx(expected, rel=1e-12)
    assert est.std_error < 1e-12


def test_integral_estimate_determinism():
    def f(points):
        return np.einsum("pi,pi->p", points, points).real ** 2

    a = integrate_quotient(f, 2, "real", 5000, seed=123)
    b = integrate_quotient(f, 2, "real", 5000, seed=123)
    assert isinstance(a, IntegralEstimate)
    assert (a.value, a.std_error) == (b.value, b.std_error)
    c = integrate_quotient(f, 2, "real", 5000, seed=124)
    assert c.value != a.value  # different seed, different points


def test_noninvariant_integrand_rejected():
    with pytest.raises(ValueError):
        integrate_quotient(lambda p: p[:, 0], 2, "real", 100, seed=0)
    with pytest.raises(ValueError):
        integrate_quotient(lambda p: p[:, 0].real, 1, "complex", 100, seed=0)


def test_nonconstant_integrand_has_error_bar():
    def f(points):
        # antipodally invariant but genuinely varying
        return points[:, 0] ** 2

    est = integrate_quotient(f, 2, "real", 4000, seed=7)
    assert est.std_error > 0
    # integral of x0^2 over the quotient, image metric: lambda * (4 pi r^2 / 2) * (r^2 / 3)
    r2 = 1.5
    expected = 2.0 * (4 * math.pi * r2 / 2) * r2 / 3
    assert est.value == pytest.approx(expected, abs=4 * est.std_error + 1e-9)


def test_gauss_bonnet_ratio():
    gi = global_invariants(2, "real", 10_000, seed=3)
    assert gi["gauss_bonnet_ratio"] == pytest.approx(1.0, abs=1e-3)
    gd = global_invariants(2, "real", 10_000, seed=3, metric="domain")
    assert gd["gauss_bonnet_ratio"] == pytest.approx(1.0, abs=1e-3)


def test_pi_functional_both_conventions():
    gi = global_invariants(2, "real", 5000, seed=5)
    assert gi["pi_functional"] == pytest.approx(8 * math.pi, rel=5e-3)
    assert gi["alpha_norm_sq_mean"] == pytest.approx(4.0 / 3.0, abs=1e-9)
    assert gi["scalar_curvature_mean"] == pytest.approx(2.0 / 3.0, abs=1e-9)
    gd = global_invariants(2, "real", 5000, seed=5, metric="domain")
    assert gd["pi_functional"] == pytest.approx(2 * math.pi, rel=5e-3)
    assert gd["alpha_norm_sq_mean"] == pytest.approx(2.0 / 3.0, abs=1e-9)
    assert gd["scalar_curvature_mean"] == pytest.approx(4.0 / 3.0, abs=1e-9)


def test_sigma_quotient():
    gi = global_invariants(3, "real", 5000, seed=11)
    assert gi["sigma_quotient"] == pytest.approx(6 * math.pi ** (4 / 3), rel=5e-3)


def test_sigma_quotient_scale_invariance():
    base = global_invariants(3, "real", 1000, seed=2)
    doubled = global_invariants(3, "real", 1000, seed=2, metric_scale=2.0)
    assert abs(doubled["sigma_quotient"] - base["sigma_quotient"]) < 1e-10
    dom = global_invariants(3, "real", 1000, seed=2, metric="domain")
    assert abs(dom["sigma_quotient"] - base["sigma_quotient"]) < 1e-10


def test_total_scalar_matches_ratio():
    gi = global_invariants(2, "real", 1000, seed=9)
    assert gi["total_scalar"] == pytest.approx(4 * math.pi * gi["gauss_bonnet_ratio"])


def test_complex_global_invariants():
    gi = global_invariants(2, "complex", 1000, seed=13)
    assert gi["scalar_curvature_mean"] == pytest.approx(8.0, abs=1e-9)
    assert gi["alpha_norm_sq_mean"] == pytest.approx(4.0, abs=1e-9)
    assert "gauss_bonnet_ratio" not in gi
    assert "sigma_quotient" not in gi


def test_bad_arguments():
    with pytest.raises(ValueError):
        integrate_quotient(ones, 2, "quaternionic", 10, seed=0)
    with pytest.raises(ValueError):
        integrate_quotient(ones, 2, "real", 0, seed=0)
    with pytest.raises(ValueError):
        global_invariants(2, "real", 100, seed=0, metric="projective")


def test_quotient_samples_deterministic():
    a = measure.quotient_samples(2, "real", 64, seed=21)
    b = measure.quotient_samples(2, "real", 64, seed=21)
    assert np.array_equal(a, b)
    r = np.linalg.norm(a, axis=1)
    assert np.max(np.abs(r - measure.constants.radius(2))) < 1e-12
