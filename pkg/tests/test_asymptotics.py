import numpy as np
import pytest

from sobolev_sphere.asymptotics import (
    calibrate_critical_value,
    limit_law,
    noncentrality_xi,
    power_curve,
    theoretical_power,
)
from sobolev_sphere.distributions import noncentral_chi2_sf
from sobolev_sphere.models import (
    ContiguousSpec,
    ModelError,
    directional_cauchy,
    exp_power,
    resolve_contiguous,
    sample_model,
    von_mises_fisher,
    watson,
)
from sobolev_sphere.sphere import SeedSpec
from sobolev_sphere.uniformity import bingham_statistic, rayleigh_statistic

TAUS = np.arange(0, 6.5, 0.5)


def test_xi_examples():
    assert noncentrality_xi(1, von_mises_fisher(0), 2) == pytest.approx(4 / 3, rel=1e-12)
    assert noncentrality_xi(2, von_mises_fisher(0), 2.7) == 0
    assert noncentrality_xi(2, watson(0), 2) == pytest.approx(64 / 45, rel=1e-12)
    assert noncentrality_xi(1, watson(0), 5) == 0


def test_xi_rayleigh_closed_form():
    # the Rayleigh noncentrality under vMF is n * kappa^2 / d = tau^2 / d
    for d in (2, 3, 4, 8):
        m = von_mises_fisher(0, d=d)
        assert noncentrality_xi(1, m, 1.7) == pytest.approx(1.7**2 / d, rel=1e-12)


def test_xi_parity_and_scaling():
    for m in (von_mises_fisher(0), watson(0), exp_power(0, 3), exp_power(0, 4, d=5)):
        for k in range(1, 7):
            xi1 = noncentrality_xi(k, m, 1.0)
            if (k - m.k_star) % 2:
                assert xi1 == 0.0
            elif xi1 > 0:
                assert noncentrality_xi(k, m, 2.0) / xi1 == pytest.approx(2 ** (2 * m.k_star))


def test_xi_unsupported_model():
    with pytest.raises(ModelError):
        noncentrality_xi(1, directional_cauchy(1.0), 1.0)


def test_power_at_zero_tau_is_alpha():
    for test in ("rayleigh", "bingham", "jupp", "adapted"):
        for fam, ell in (("vmf", 2), ("watson", 4)):
            assert theoretical_power(test, ContiguousSpec(fam, 0.0, ell)) == \
                pytest.approx(0.05, abs=1e-10)


def test_jupp_blind_under_watson():
    for tau in TAUS:
        assert theoretical_power("jupp", ContiguousSpec("watson", tau, 4)) == \
            pytest.approx(0.05, abs=1e-10)


def test_adapted_watson_value():
    xi2 = 4 * 4**4 / 45
    expected = noncentral_chi2_sf(15.5073131, 8, xi2)
    assert theoretical_power("adapted", ContiguousSpec("watson", 4, 4)) == \
        pytest.approx(expected, abs=1e-6)
    law = limit_law("adapted", ContiguousSpec("watson", 4, 4))
    (d1, x1, _), (d2, x2, _) = law.components
    assert (d1, d2) == (3, 5) and x1 == 0.0
    assert x2 == pytest.approx(xi2, rel=1e-13)


@pytest.mark.parametrize("test", ["rayleigh", "bingham", "jupp", "adapted"])
@pytest.mark.parametrize("family", ["vmf", "watson"])
def test_power_nondecreasing_in_tau(test, family):
    rows = power_curve(test, family, TAUS)
    p = [r["power"] for r in rows]
    assert all(b >= a - 1e-12 for a, b in zip(p, p[1:]))


def test_non_contiguous_rate_rejected():
    with pytest.raises(ValueError):
        theoretical_power("adapted", ContiguousSpec("watson", 2, 6))
    with pytest.raises(ModelError):
        theoretical_power("adapted", ContiguousSpec("cauchy", 2, 2))
    with pytest.raises(ValueError):
        theoretical_power("kuiper", ContiguousSpec("vmf", 2, 2))


def test_xi_matches_monte_carlo_rayleigh():
    # Rayleigh statistic under vMF at kappa = tau/sqrt(n) ~ chi2_3(4/3) for tau = 2
    n, reps, tau = 1000, 4000, 2.0
    m = resolve_contiguous(ContiguousSpec("vmf", tau, 2), n)
    R = np.array([rayleigh_statistic(sample_model(n, m, SeedSpec(61, r))) for r in range(reps)])
    assert R.mean() == pytest.approx(3 + 4 / 3, abs=4 * R.std() / np.sqrt(reps))


def test_xi_matches_monte_carlo_bingham():
    n, reps, tau = 1500, 4000, 2.0
    m = resolve_contiguous(ContiguousSpec("watson", tau, 4), n)
    B = np.array([bingham_statistic(sample_model(n, m, SeedSpec(62, r))) for r in range(reps)])
    assert B.mean() == pytest.approx(5 + 64 / 45, abs=4 * B.std() / np.sqrt(reps))


def test_calibrate_precondition():
    with pytest.raises(ValueError):
        calibrate_critical_value("adapted", 100, 3, 0.05, reps=50, seed=1)


def test_calibrate_deterministic_and_thread_independent():
    a = calibrate_critical_value("rayleigh", 60, 3, 0.1, reps=200, seed=4, threads=1)
    b = calibrate_critical_value("rayleigh", 60, 3, 0.1, reps=200, seed=4, threads=3)
    assert a == b


@pytest.mark.slow
def test_calibrate_rayleigh_large_n():
    v = calibrate_critical_value("rayleigh", 1000, 3, 0.05, reps=5000, seed=SeedSpec(11))
    assert abs(v - 7.8147) < 0.4


@pytest.mark.slow
def test_calibrate_adapted_large_n():
    v = calibrate_critical_value("adapted", 1500, 3, 0.05, reps=5000, seed=SeedSpec(12))
    assert abs(v - 15.5073) < 0.6
