"""Local asymptotic power of the Sobolev tests.

Under contiguous rotationally symmetric alternatives with
``kappa_n = n^(-1/(2 k*)) tau`` the degree-k term of a Sobolev statistic
converges to a noncentral ``chi^2_{d_k}(xi_k)`` where ``xi_k`` vanishes
unless ``k`` and ``k*`` share parity. The data-driven tests behave in the
limit like fixed-weight tests: jupp selects order 1, the adapted test
order 2.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from ._parallel import ordered_map
from .distributions import ChiSquareMixture, chi2_quantile, mixture_sf
from .kernels import gegenbauer_coefficient, harmonic_dimension, moment_a, weight_w
from .models import AngularModel, ContiguousSpec, ModelError
from .sphere import SeedSpec, sample_uniform_sphere
from .uniformity import SelectionConfig, method_statistics, null_dof

POWER_TESTS = ("rayleigh", "bingham", "jupp", "adapted")

# degrees carried by each test in the contiguous limit
_LIMIT_DEGREES = {"rayleigh": (1,), "bingham": (2,), "jupp": (1,), "adapted": (1, 2)}


def _chebyshev_coefficient(k: int, j: int) -> float:
    # T_k(t) = sum_j (-1)^j c_{k,j} t^(k-2j)
    return (k / 2) * math.exp(
        math.lgamma(k - j) - math.lgamma(j + 1) - math.lgamma(k - 2 * j + 1)
    ) * 2.0 ** (k - 2 * j)


def _projection_moment(k: int, k_star: int, d: int) -> float:
    """``E[P_k(T) T^k*]`` for the uniform cosine T.

    ``P_k`` is the Gegenbauer polynomial of index (d-2)/2, or the Chebyshev
    polynomial T_k on the circle.
    """
    total = 0.0
    for j in range(k // 2 + 1):
        if d == 2:
            c = _chebyshev_coefficient(k, j)
        else:
            c = gegenbauer_coefficient(k, j, (d - 2) / 2)
        total += (-1) ** j * c * moment_a(k + k_star - 2 * j, d)
    return total


def noncentrality_xi(k: int, model: AngularModel, tau: float,
                     d: Optional[int] = None) -> float:
    """Noncentrality of the degree-k limit component.

    ``w_k^2 (g^(k*)(0))^2 tau^(2k*) / (k*!)^2 * (E[P_k(T) T^k*])^2`` when k
    and k* share parity, else exactly 0.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    d = model.d if d is None else d
    k_star = model.k_star
    if k_star is None:
        raise ModelError(f"no local-power theory for the {model.family} family")
    if (k - k_star) % 2:
        return 0.0
    g = model.g_derivative(k_star)
    proj = _projection_moment(k, k_star, d)
    return (weight_w(k, d) ** 2 * g * g * tau ** (2 * k_star)
            / math.factorial(k_star) ** 2 * proj * proj)


def _check_contiguous(spec: ContiguousSpec) -> AngularModel:
    model = spec.model()
    if model.k_star is None:
        raise ModelError(f"no local-power theory for the {model.family} family")
    if not math.isclose(spec.ell, 2 * model.k_star):
        raise ValueError(
            f"ell = {spec.ell} is not the contiguous rate 2*k_star = "
            f"{2 * model.k_star} for {model.family}"
        )
    return model


def limit_law(test: str, spec: ContiguousSpec) -> ChiSquareMixture:
    """Limit law of ``test`` under the contiguous alternative ``spec``."""
    if test not in _LIMIT_DEGREES:
        raise ValueError(f"unknown test {test!r}; choose from {POWER_TESTS}")
    model = _check_contiguous(spec)
    d = spec.d
    return ChiSquareMixture(
        [
            (harmonic_dimension(k, d), noncentrality_xi(k, model, spec.tau, d))
            for k in _LIMIT_DEGREES[test]
        ]
    )


def theoretical_power(test: str, spec: ContiguousSpec, alpha: float = 0.05) -> float:
    """Asymptotic rejection probability at level ``alpha``."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    law = limit_law(test, spec)
    crit = chi2_quantile(1 - alpha, null_dof(test, spec.d))
    return mixture_sf(crit, law)


def power_curve(test: str, family: str, taus, d: int = 3, alpha: float = 0.05,
                b: Optional[int] = None) -> list[dict]:
    """Rows ``{tau, xi_1, xi_2, power}`` over a grid of tau at the contiguous rate."""
    mu = (1.0,) + (0.0,) * (d - 1)
    model = AngularModel(family, 0.0, mu, b)
    if model.k_star is None:
        raise ModelError(f"no local-power theory for the {model.family} family")
    rows = []
    for tau in taus:
        spec = ContiguousSpec(family, float(tau), 2 * model.k_star, mu, b)
        rows.append({
            "tau": float(tau),
            "xi_1": noncentrality_xi(1, model, float(tau), d),
            "xi_2": noncentrality_xi(2, model, float(tau), d),
            "power": theoretical_power(test, spec, alpha),
        })
    return rows


def calibrate_critical_value(method: str, n: int, d: int, alpha: float = 0.05,
                             reps: int = 1000, seed=0,
                             config: SelectionConfig | None = None,
                             threads: Optional[int] = None) -> float:
    """Empirical (1 - alpha) quantile of a statistic under uniformity."""
    if reps < 100:
        raise ValueError("calibration needs reps >= 100")
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    null_dof(method, d)  # validates the method name
    config = config or SelectionConfig()
    master = seed.master_seed if isinstance(seed, SeedSpec) else int(seed)

    def one(r):
        x = sample_uniform_sphere(n, d, SeedSpec(master, r, (n, d)))
        return method_statistics(x, [method], config)[method][0]

    stats = np.array(ordered_map(one, range(reps), threads))
    return float(np.quantile(stats, 1 - alpha))
