"""Sobolev tests of uniformity on the hypersphere.

All statistics here are built from the per-degree terms

    T_k = (1/n) sum_{i,j} h_k(x_i . x_j),       k = 1, 2, ...

which are squared norms of harmonic sums and hence nonnegative. A Sobolev
statistic with weights v_k is ``sum_k v_k^2 T_k``; the Rayleigh, Bingham
and quadratic score statistics use indicator weights, and the data-driven
tests pick the score order from a penalized criterion.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from ._engine import upper_pair_kernel_sums
from .distributions import (
    ChiSquareMixture,
    chi2_quantile,
    chi2_sf,
    mixture_quantile,
    mixture_sf,
)
from .kernels import DEFAULT_DEGREE_CAP, harmonic_dimension
from .sphere import as_sample

METHODS = ("rayleigh", "bingham", "score:K", "jupp", "adapted")


@dataclass(frozen=True)
class WeightSequence:
    """Finitely supported Sobolev weights ``v_1, ..., v_K``."""

    weights: tuple[float, ...]

    def __init__(self, weights: Sequence[float]):
        w = tuple(float(v) for v in weights)
        if not w or not any(v != 0 for v in w):
            raise ValueError("weights need at least one nonzero entry")
        if not all(math.isfinite(v) for v in w):
            raise ValueError("weights must be finite")
        object.__setattr__(self, "weights", w)

    @classmethod
    def rayleigh(cls) -> "WeightSequence":
        return cls([1.0])

    @classmethod
    def bingham(cls) -> "WeightSequence":
        return cls([0.0, 1.0])

    @classmethod
    def score(cls, K: int) -> "WeightSequence":
        if K < 1:
            raise ValueError("K must be >= 1")
        return cls([1.0] * K)

    @property
    def max_degree(self) -> int:
        return max(i for i, v in enumerate(self.weights) if v != 0) + 1

    @property
    def squared(self) -> np.ndarray:
        return np.square(np.array(self.weights[: self.max_degree]))

    def null_law(self, d: int) -> ChiSquareMixture:
        """Asymptotic null law ``sum_k v_k^2 chi^2_{d_k}``."""
        return ChiSquareMixture(
            [
                (harmonic_dimension(k, d), 0.0, v2)
                for k, v2 in enumerate(self.squared, 1)
                if v2 > 0
            ]
        )


PENALTY_RULES = ("dof",)


@dataclass(frozen=True)
class SelectionConfig:
    """Settings of the data-driven order selector.

    ``cap_M`` is the largest order considered. The ``"dof"`` penalty rule
    charges ``p_K = d_1 + ... + d_K`` per ``log n``.
    """

    cap_M: int = 10
    penalty_rule: str = "dof"

    def __post_init__(self) -> None:
        if self.cap_M < 2:
            raise ValueError("cap_M must be >= 2")
        if self.cap_M > DEFAULT_DEGREE_CAP:
            raise ValueError(f"cap_M must be <= {DEFAULT_DEGREE_CAP}")
        if self.penalty_rule not in PENALTY_RULES:
            raise ValueError(
                f"unknown penalty rule {self.penalty_rule!r}; "
                f"choose from {PENALTY_RULES}"
            )

    def penalties(self, d: int) -> np.ndarray:
        """``[p_1, ..., p_M]``."""
        dims = [harmonic_dimension(k, d) for k in range(1, self.cap_M + 1)]
        return np.cumsum(dims).astype(float)


@dataclass(frozen=True)
class TestOutcome:
    method: str
    statistic: float
    dof: int
    critical_value: float
    alpha: float
    reject: bool
    p_value: float
    selected_k: Optional[int] = None

    __test__ = False  # keep pytest from collecting this class

    def asdict(self) -> dict:
        return asdict(self)


# --------------------------------------------------------------------------
# statistics


def degree_terms(sample, max_degree: int) -> np.ndarray:
    """Per-degree terms ``[T_1, ..., T_K]`` from one pass over the pairs.

    Diagonal pairs contribute ``h_k(1) = d_k`` each, so
    ``T_k = d_k + (2/n) sum_{i<j} h_k(x_i . x_j)``.
    """
    sample = as_sample(sample)
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    if max_degree > DEFAULT_DEGREE_CAP:
        raise ValueError(f"max_degree must be <= {DEFAULT_DEGREE_CAP}")
    n, d = sample.size_n, sample.dim_d
    dims = np.array([harmonic_dimension(k, d) for k in range(1, max_degree + 1)],
                    dtype=float)
    if n == 1:
        return dims
    off = upper_pair_kernel_sums(sample.points, max_degree)
    return dims + 2.0 * off / n


def sobolev_statistic(sample, weights: WeightSequence) -> float:
    """``(1/n) sum_{i,j} sum_k v_k^2 h_k(x_i . x_j)``, diagonal included."""
    if not isinstance(weights, WeightSequence):
        weights = WeightSequence(weights)
    v2 = weights.squared
    return float(np.dot(v2, degree_terms(sample, len(v2))))


def rayleigh_statistic(sample) -> float:
    """``d n |xbar|^2``."""
    x = as_sample(sample).points
    n, d = x.shape
    xbar = x.mean(axis=0)
    return float(d * n * np.dot(xbar, xbar))


def bingham_statistic(sample) -> float:
    """``n d(d+2)/2 [ |S|_F^2 - 1/d ]`` with ``S`` the scatter matrix.

    ``|S|_F^2 = (1/n^2) sum_{i,j} (x_i . x_j)^2`` is formed in ``O(n d^2)``.
    """
    x = as_sample(sample).points
    n, d = x.shape
    S = x.T @ x / n
    return float(n * d * (d + 2) / 2 * (np.sum(S * S) - 1.0 / d))


def bingham_statistic_covariance(sample) -> float:
    """Bingham statistic through the mean and the (1/n) covariance.

    ``|S|_F^2 = tr(C^2) + 2 xbar' C xbar + |xbar|^4``.
    """
    x = as_sample(sample).points
    n, d = x.shape
    xbar = x.mean(axis=0)
    xc = x - xbar
    C = xc.T @ xc / n
    r2 = float(xbar @ xbar)
    frob = np.trace(C @ C) + 2 * xbar @ C @ xbar + r2 * r2
    return float(n * d * (d + 2) / 2 * (frob - 1.0 / d))


def score_statistic(sample, K: int) -> float:
    """Quadratic score statistic ``S_K = T_1 + ... + T_K``."""
    return float(np.sum(degree_terms(sample, K)))


def penalized_scores(terms: np.ndarray, n: int, d: int,
                     config: SelectionConfig) -> np.ndarray:
    """``[B(1), ..., B(M)]`` with ``B(K) = S_K - p_K log n``."""
    if n < 2:
        raise ValueError("penalized score needs n >= 2")
    M = config.cap_M
    terms = np.asarray(terms, dtype=float)
    if terms.shape[0] < M:
        raise ValueError(f"need {M} degree terms, got {terms.shape[0]}")
    return np.cumsum(terms[:M]) - config.penalties(d) * math.log(n)


def penalized_score(sample, K: int, config: SelectionConfig | None = None) -> float:
    """Penalized score ``B(K) = S_K - p_K log n``."""
    config = config or SelectionConfig()
    sample = as_sample(sample)
    if sample.size_n < 2:
        raise ValueError("penalized score needs n >= 2")
    p_K = sum(harmonic_dimension(k, sample.dim_d) for k in range(1, K + 1))
    return score_statistic(sample, K) - p_K * math.log(sample.size_n)


def select_from_terms(terms: np.ndarray, n: int, d: int,
                      config: SelectionConfig) -> int:
    """Smallest order attaining the maximal penalized score."""
    B = penalized_scores(terms, n, d, config)
    # argmax returns the first maximizer, i.e. ties go to the smallest K
    return int(np.argmax(B)) + 1


def select_k(sample, config: SelectionConfig | None = None) -> int:
    config = config or SelectionConfig()
    sample = as_sample(sample)
    if sample.size_n < 2:
        raise ValueError("order selection needs n >= 2")
    terms = degree_terms(sample, config.cap_M)
    return select_from_terms(terms, sample.size_n, sample.dim_d, config)


# --------------------------------------------------------------------------
# tests


def _check_alpha(alpha: float) -> None:
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")


def _chi2_outcome(method, stat, dof, alpha, selected_k=None) -> TestOutcome:
    crit = chi2_quantile(1 - alpha, dof)
    return TestOutcome(
        method=method,
        statistic=float(stat),
        dof=int(dof),
        critical_value=crit,
        alpha=alpha,
        reject=bool(stat > crit),
        p_value=float(chi2_sf(stat, dof)),
        selected_k=selected_k,
    )


def null_dof(method: str, d: int) -> int:
    """Degrees of freedom of the asymptotic chi-square null law."""
    if method in ("rayleigh", "jupp"):
        return harmonic_dimension(1, d)
    if method == "bingham":
        return harmonic_dimension(2, d)
    if method == "adapted":
        return harmonic_dimension(1, d) + harmonic_dimension(2, d)
    if method.startswith("score:"):
        K = int(method.split(":", 1)[1])
        return sum(harmonic_dimension(k, d) for k in range(1, K + 1))
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def critical_value(method: str, d: int, alpha: float = 0.05) -> float:
    _check_alpha(alpha)
    return chi2_quantile(1 - alpha, null_dof(method, d))


def rayleigh_test(sample, alpha: float = 0.05) -> TestOutcome:
    _check_alpha(alpha)
    sample = as_sample(sample)
    return _chi2_outcome("rayleigh", rayleigh_statistic(sample),
                         harmonic_dimension(1, sample.dim_d), alpha)


def bingham_test(sample, alpha: float = 0.05) -> TestOutcome:
    _check_alpha(alpha)
    sample = as_sample(sample)
    return _chi2_outcome("bingham", bingham_statistic(sample),
                         harmonic_dimension(2, sample.dim_d), alpha)


def score_test(sample, K: int, alpha: float = 0.05) -> TestOutcome:
    _check_alpha(alpha)
    sample = as_sample(sample)
    return _chi2_outcome(f"score:{K}", score_statistic(sample, K),
                         null_dof(f"score:{K}", sample.dim_d), alpha)


def sobolev_test(sample, weights: WeightSequence, alpha: float = 0.05) -> TestOutcome:
    """Sobolev test with arbitrary finite weights.

    The null law is the weighted chi-square sum; ``dof`` reports the total
    degrees of freedom of its support.
    """
    _check_alpha(alpha)
    if not isinstance(weights, WeightSequence):
        weights = WeightSequence(weights)
    sample = as_sample(sample)
    stat = sobolev_statistic(sample, weights)
    law = weights.null_law(sample.dim_d)
    crit = mixture_quantile(1 - alpha, law)
    return TestOutcome(
        method="sobolev",
        statistic=stat,
        dof=law.total_dof,
        critical_value=crit,
        alpha=alpha,
        reject=bool(stat > crit),
        p_value=mixture_sf(stat, law),
    )


def data_driven_from_terms(terms, n, d, config, alpha, adapted):
    """Both data-driven tests from precomputed degree terms."""
    k_hat = select_from_terms(terms, n, d, config)
    if adapted:
        k = max(k_hat, 2)
        method, dof = "adapted", null_dof("adapted", d)
    else:
        k = k_hat
        method, dof = "jupp", null_dof("jupp", d)
    stat = float(np.sum(terms[:k]))
    return _chi2_outcome(method, stat, dof, alpha, selected_k=k)


def data_driven_test(sample, config: SelectionConfig | None = None,
                     alpha: float = 0.05) -> TestOutcome:
    """Data-driven Sobolev test: score statistic at the selected order.

    Referred to the chi-square law with ``d_1`` degrees of freedom, the null
    limit of the selected statistic.
    """
    _check_alpha(alpha)
    config = config or SelectionConfig()
    sample = as_sample(sample)
    if sample.size_n < 2:
        raise ValueError("data-driven test needs n >= 2")
    terms = degree_terms(sample, config.cap_M)
    return data_driven_from_terms(terms, sample.size_n, sample.dim_d,
                                  config, alpha, adapted=False)


def adapted_test(sample, config: SelectionConfig | None = None,
                 alpha: float = 0.05) -> TestOutcome:
    """Data-driven test with the selected order floored at 2.

    Keeping at least one even degree restores power against alternatives
    whose odd-order angular derivatives vanish. Null law: chi-square with
    ``d_1 + d_2`` degrees of freedom.
    """
    _check_alpha(alpha)
    config = config or SelectionConfig()
    sample = as_sample(sample)
    if sample.size_n < 2:
        raise ValueError("data-driven test needs n >= 2")
    terms = degree_terms(sample, config.cap_M)
    return data_driven_from_terms(terms, sample.size_n, sample.dim_d,
                                  config, alpha, adapted=True)


def run_test(sample, method: str, alpha: float = 0.05,
             config: SelectionConfig | None = None) -> TestOutcome:
    """Dispatch by method name: rayleigh, bingham, score:K, jupp, adapted."""
    if method == "rayleigh":
        return rayleigh_test(sample, alpha)
    if method == "bingham":
        return bingham_test(sample, alpha)
    if method == "jupp":
        return data_driven_test(sample, config, alpha)
    if method == "adapted":
        return adapted_test(sample, config, alpha)
    if method.startswith("score:"):
        try:
            K = int(method.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad score order in {method!r}") from None
        return score_test(sample, K, alpha)
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def method_statistics(sample, methods: Sequence[str],
                      config: SelectionConfig | None = None) -> dict:
    """Statistic (and selected order) of several methods on one sample.

    The data-driven methods share a single pass over the pairs; Rayleigh and
    Bingham use their ``O(n d^2)`` closed forms.

    Returns ``{method: (statistic, selected_k or None)}``.
    """
    config = config or SelectionConfig()
    sample = as_sample(sample)
    n, d = sample.size_n, sample.dim_d
    need = [m for m in methods if m in ("jupp", "adapted") or m.startswith("score:")]
    terms = None
    if need:
        K = config.cap_M
        for m in need:
            if m.startswith("score:"):
                K = max(K, int(m.split(":", 1)[1]))
        terms = degree_terms(sample, K)
        k_hat = select_from_terms(terms, n, d, config) if n >= 2 else 1
    out = {}
    for m in methods:
        if m == "rayleigh":
            out[m] = (rayleigh_statistic(sample), None)
        elif m == "bingham":
            out[m] = (bingham_statistic(sample), None)
        elif m == "jupp":
            out[m] = (float(np.sum(terms[:k_hat])), k_hat)
        elif m == "adapted":
            k = max(k_hat, 2)
            out[m] = (float(np.sum(terms[:k])), k)
        elif m.startswith("score:"):
            K = int(m.split(":", 1)[1])
            out[m] = (float(np.sum(terms[:K])), None)
        else:
            raise ValueError(f"unknown method {m!r}; choose from {METHODS}")
    return out
