"""Central, noncentral and summed chi-square laws.

These are the asymptotic null and local-alternative distributions of the
Sobolev statistics: a finite Sobolev statistic converges to an independent
sum ``sum_k v_k^2 chi^2_{d_k}(xi_k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import integrate, optimize
from scipy.special import gammainc, gammaincc, gammaln, ndtri

SERIES_TAIL = 1e-12
SERIES_MAX_TERMS = 10_000


def chi2_cdf(x, dof):
    """Regularized lower incomplete gamma ``P(dof/2, x/2)``."""
    x = np.asarray(x, dtype=float)
    out = gammainc(np.asarray(dof, dtype=float) / 2, np.maximum(x, 0.0) / 2)
    out = np.where(x > 0, out, 0.0)
    return float(out) if out.ndim == 0 else out


def chi2_sf(x, dof):
    x = np.asarray(x, dtype=float)
    out = gammaincc(np.asarray(dof, dtype=float) / 2, np.maximum(x, 0.0) / 2)
    out = np.where(x > 0, out, 1.0)
    return float(out) if out.ndim == 0 else out


def chi2_pdf(x: float, dof: float) -> float:
    if x <= 0:
        if dof == 2:
            return 0.5 if x == 0 else 0.0
        return math.inf if (x == 0 and dof < 2) else 0.0
    k = dof / 2
    return math.exp((k - 1) * math.log(x) - x / 2 - k * math.log(2) - gammaln(k))


def chi2_quantile(p: float, dof: float, tol: float = 1e-12) -> float:
    """Inverse of :func:`chi2_cdf` by safeguarded Newton iteration.

    Starts from the Wilson-Hilferty approximation. For ``p > 1/2`` the
    iteration works on the survival function to keep upper-tail accuracy.
    """
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p!r}")
    if dof <= 0:
        raise ValueError("dof must be positive")
    upper = p > 0.5

    def resid(x):
        # cdf(x) - p, increasing in x with derivative pdf(x)
        return (1 - p) - chi2_sf(x, dof) if upper else chi2_cdf(x, dof) - p

    h = 2.0 / (9.0 * dof)
    x = dof * (1 - h + ndtri(p) * math.sqrt(h)) ** 3
    if not x > 0:
        x = max(dof * 1e-3, 1e-8)

    lo, hi = 0.0, max(x, 1.0)
    while resid(hi) < 0:
        lo, hi = hi, 2 * hi
    scale = min(p, 1 - p)
    for _ in range(200):
        r = resid(x)
        if abs(r) <= tol * scale:
            return float(x)
        if r < 0:
            lo = x
        else:
            hi = x
        dens = chi2_pdf(x, dof)
        x_new = x - r / dens if dens > 0 else math.nan
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 4e-16 * x:
            return float(x_new)
        x = x_new
    return float(x)


def _poisson_window(mu: float) -> tuple[int, int]:
    # Chernoff-type window holding all but ~1e-13 of the Poisson(mu) mass
    spread = 10.0 * math.sqrt(mu) + 30.0
    lo = max(0, int(math.floor(mu - spread)))
    hi = int(math.ceil(mu + spread))
    if hi - lo + 1 > SERIES_MAX_TERMS:
        raise OverflowError(f"noncentrality {2 * mu} needs more than "
                            f"{SERIES_MAX_TERMS} series terms")
    return lo, hi


def noncentral_chi2_cdf(x: float, dof: float, xi: float) -> float:
    """CDF of ``chi^2_dof(xi)`` as a Poisson mixture of central laws.

    ``sum_j Pois(j; xi/2) * P(dof/2 + j, x/2)``, summed over the window of
    ``j`` carrying all but ``1e-12`` of the Poisson mass.
    """
    if xi < 0:
        raise ValueError("noncentrality must be >= 0")
    if x <= 0:
        return 0.0
    if xi == 0:
        return chi2_cdf(x, dof)
    mu = xi / 2
    lo, hi = _poisson_window(mu)
    j = np.arange(lo, hi + 1, dtype=float)
    logw = -mu + j * math.log(mu) - gammaln(j + 1)
    w = np.exp(logw)
    vals = gammainc(dof / 2 + j, x / 2)
    return float(min(1.0, math.fsum(w * vals)))


def noncentral_chi2_sf(x: float, dof: float, xi: float) -> float:
    if xi < 0:
        raise ValueError("noncentrality must be >= 0")
    if x <= 0:
        return 1.0
    if xi == 0:
        return chi2_sf(x, dof)
    mu = xi / 2
    lo, hi = _poisson_window(mu)
    j = np.arange(lo, hi + 1, dtype=float)
    w = np.exp(-mu + j * math.log(mu) - gammaln(j + 1))
    vals = gammaincc(dof / 2 + j, x / 2)
    return float(min(1.0, math.fsum(w * vals)))


@dataclass(frozen=True)
class ChiSquareMixture:
    """Law of an independent sum ``sum_i weight_i * chi^2_{dof_i}(ncp_i)``.

    ``components`` holds ``(dof, ncp)`` or ``(dof, ncp, weight)`` tuples;
    omitted weights are 1.
    """

    components: tuple

    def __init__(self, components: Sequence):
        comps = []
        for c in components:
            c = tuple(c)
            if len(c) == 2:
                c = (c[0], c[1], 1.0)
            dof, ncp, w = int(c[0]), float(c[1]), float(c[2])
            if dof < 1:
                raise ValueError("every dof must be >= 1")
            if ncp < 0:
                raise ValueError("every noncentrality must be >= 0")
            if w <= 0:
                raise ValueError("every weight must be > 0")
            comps.append((dof, ncp, w))
        if not comps:
            raise ValueError("a chi-square mixture needs at least one component")
        object.__setattr__(self, "components", tuple(comps))

    @property
    def common_weight(self):
        ws = {c[2] for c in self.components}
        return ws.pop() if len(ws) == 1 else None

    @property
    def total_dof(self) -> int:
        return sum(c[0] for c in self.components)

    @property
    def total_ncp(self) -> float:
        return sum(c[1] for c in self.components)

    def mean(self) -> float:
        return sum(w * (k + xi) for k, xi, w in self.components)

    def sample(self, size: int, rng: np.random.Generator) -> np.ndarray:
        out = np.zeros(size)
        for k, xi, w in self.components:
            if xi > 0:
                out += w * rng.noncentral_chisquare(k, xi, size)
            else:
                out += w * rng.chisquare(k, size)
        return out


def _imhof_sf(x: float, law: ChiSquareMixture) -> float:
    lam = np.array([c[2] for c in law.components])
    h = np.array([c[0] for c in law.components], dtype=float)
    delta2 = np.array([c[1] for c in law.components])

    def integrand(u):
        lu = lam * u
        theta = 0.5 * np.sum(h * np.arctan(lu) + delta2 * lu / (1 + lu**2)) - 0.5 * x * u
        logrho = np.sum(0.25 * h * np.log1p(lu**2)) + 0.5 * np.sum(
            delta2 * lu**2 / (1 + lu**2)
        )
        return math.sin(theta) / (u * math.exp(logrho))

    val, _ = integrate.quad(integrand, 0, np.inf, limit=1000, epsabs=1e-12)
    return 0.5 + val / math.pi


def mixture_cdf(x: float, law: ChiSquareMixture) -> float:
    """CDF of a :class:`ChiSquareMixture` at ``x``.

    Equal weights collapse to one noncentral chi-square with summed dof and
    noncentrality. Unequal weights use Imhof's inversion formula.
    """
    if not isinstance(law, ChiSquareMixture):
        law = ChiSquareMixture(law)
    if x <= 0:
        return 0.0
    w = law.common_weight
    if w is not None:
        return noncentral_chi2_cdf(x / w, law.total_dof, law.total_ncp)
    return float(min(1.0, max(0.0, 1.0 - _imhof_sf(x, law))))


def mixture_sf(x: float, law: ChiSquareMixture) -> float:
    if not isinstance(law, ChiSquareMixture):
        law = ChiSquareMixture(law)
    if x <= 0:
        return 1.0
    w = law.common_weight
    if w is not None:
        return noncentral_chi2_sf(x / w, law.total_dof, law.total_ncp)
    return float(min(1.0, max(0.0, _imhof_sf(x, law))))


def mixture_quantile(p: float, law: ChiSquareMixture) -> float:
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p!r}")
    if not isinstance(law, ChiSquareMixture):
        law = ChiSquareMixture(law)
    w = law.common_weight
    if w is not None and law.total_ncp == 0:
        return w * chi2_quantile(p, law.total_dof)
    hi = max(1.0, 2 * law.mean())
    while mixture_cdf(hi, law) < p:
        hi *= 2
    return optimize.brentq(lambda x: mixture_cdf(x, law) - p, 0.0, hi, xtol=1e-12)
