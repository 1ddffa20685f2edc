import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_chebyt, eval_gegenbauer, eval_legendre

from sobolev_sphere.kernels import (
    KernelSpec,
    gegenbauer_coefficient,
    harmonic_dimension,
    kernel_h,
    kernel_h_all,
    moment_a,
    weight_w,
)
from sobolev_sphere.sphere import SeedSpec, sample_uniform_sphere


def oracle_h(k, t, d):
    # scipy's orthogonal-polynomial evaluators, independent of this package
    if d == 2:
        return 2 * eval_chebyt(k, t)
    lam = (d - 2) / 2
    return (1 + 2 * k / (d - 2)) * eval_gegenbauer(k, lam, t)


@pytest.mark.parametrize("k,d,expected", [(1, 3, 3), (2, 3, 5), (5, 2, 2), (1, 4, 4)])
def test_harmonic_dimension(k, d, expected):
    assert harmonic_dimension(k, d) == expected


@pytest.mark.parametrize("k", range(1, 12))
def test_harmonic_dimension_sphere_s2(k):
    assert harmonic_dimension(k, 3) == 2 * k + 1


def test_harmonic_dimension_overflow():
    with pytest.raises(OverflowError):
        harmonic_dimension(10**6, 60)


def test_gegenbauer_coefficients():
    assert gegenbauer_coefficient(1, 0, 0.5) == pytest.approx(1.0, rel=1e-14)
    assert gegenbauer_coefficient(2, 0, 0.5) == pytest.approx(1.5, rel=1e-14)
    assert gegenbauer_coefficient(2, 1, 0.5) == pytest.approx(0.5, rel=1e-14)
    with pytest.raises(ValueError):
        gegenbauer_coefficient(2, 2, 0.5)


def test_gegenbauer_coefficient_large_k_finite():
    # Gamma(k - j + lam) alone overflows here
    c = gegenbauer_coefficient(200, 100, 1.5)
    assert math.isfinite(c) and c > 0


@pytest.mark.parametrize("k,t,d,expected", [
    (1, 0.5, 3, 1.5),
    (2, 0.5, 3, -0.625),
    (2, 0.5, 2, -1.0),
])
def test_kernel_h_examples(k, t, d, expected):
    assert kernel_h(k, t, d) == pytest.approx(expected, abs=1e-14)


def test_kernel_h_matches_legendre():
    t = np.linspace(-1, 1, 41)
    for k in range(1, 15):
        np.testing.assert_allclose(kernel_h(k, t, 3), (2 * k + 1) * eval_legendre(k, t),
                                   atol=1e-12 * (2 * k + 1))


def test_kernel_h_all_examples():
    np.testing.assert_allclose(kernel_h_all(2, 0.5, 3), [1.5, -0.625], atol=1e-15)
    np.testing.assert_allclose(kernel_h_all(3, 1.0, 3), [3, 5, 7], atol=1e-13)
    np.testing.assert_allclose(kernel_h_all(1, 0.0, 2), [0.0], atol=1e-15)


def test_reproducing_property():
    for d in range(2, 11):
        all_at_one = kernel_h_all(30, 1.0, d)
        for k in range(1, 31):
            dk = harmonic_dimension(k, d)
            assert kernel_h(k, 1.0, d) == pytest.approx(dk, rel=1e-9)
            assert all_at_one[k - 1] == pytest.approx(dk, rel=1e-9)


def test_recurrence_matches_closed_form_lattice():
    # relative to sup |h_k| = d_k, since h_k has zeros inside [-1, 1]
    t = np.linspace(-1, 1, 21)
    for d in range(2, 11):
        rec = kernel_h_all(30, t, d)
        for k in range(1, 31):
            closed = kernel_h(k, t, d)
            err = np.max(np.abs(rec[:, k - 1] - closed))
            assert err <= 1e-10 * harmonic_dimension(k, d), (d, k, err)


def test_recurrence_matches_scipy():
    t = np.linspace(-1, 1, 101)
    for d in (2, 3, 4, 7):
        rec = kernel_h_all(20, t, d)
        for k in range(1, 21):
            np.testing.assert_allclose(rec[:, k - 1], oracle_h(k, t, d),
                                       atol=1e-10 * harmonic_dimension(k, d))


@pytest.mark.parametrize("d", [2, 3, 5, 10])
def test_boundedness(d):
    t = np.linspace(-1, 1, 1000)
    h = kernel_h_all(30, t, d)
    for k in range(1, 31):
        assert np.all(np.abs(h[:, k - 1]) <= harmonic_dimension(k, d) * (1 + 1e-12))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 30), st.floats(-1, 1), st.integers(2, 10))
def test_recurrence_vs_closed_form_random(k, t, d):
    assert kernel_h_all(k, t, d)[-1] == pytest.approx(
        kernel_h(k, t, d), abs=1e-10 * harmonic_dimension(k, d))


def test_kernel_spec_cap():
    assert KernelSpec(3, 50).lam == 0.5
    with pytest.raises(ValueError):
        KernelSpec(3, 51)
    assert KernelSpec(3, 60, cap=80).max_degree == 60


@pytest.mark.parametrize("d", [3, 5])
def test_kernel_orthogonality_under_uniformity(d):
    N = 100_000
    x = sample_uniform_sphere(N, d, SeedSpec(21)).points
    y = sample_uniform_sphere(N, d, SeedSpec(22)).points
    t = np.sum(x * y, axis=1)
    h = kernel_h_all(4, t, d)
    for k in range(4):
        m, s = h[:, k].mean(), h[:, k].std()
        assert abs(m) < 4 * s / np.sqrt(N)


def test_moment_a_values():
    assert moment_a(0, 3) == 1
    assert moment_a(2, 3) == pytest.approx(1 / 3)
    assert moment_a(4, 3) == pytest.approx(1 / 5)
    assert moment_a(3, 5) == 0


@pytest.mark.parametrize("d", [2, 3, 6])
def test_moment_a_monte_carlo(d):
    t = sample_uniform_sphere(100_000, d, SeedSpec(31)).points[:, 0]
    for m in range(7):
        assert abs(np.mean(t**m) - moment_a(m, d)) < 0.01


def test_weight_w():
    assert weight_w(7, 2) == pytest.approx(math.sqrt(2))
    assert weight_w(1, 3) == pytest.approx(math.sqrt(3))
    assert weight_w(2, 3) == pytest.approx(math.sqrt(5))
