"""Rotationally symmetric alternatives on the sphere and their samplers.

A model has density proportional to ``g(kappa * mu.x)`` on S^(d-1), with an
angular function ``g``:

=============  =========================  =========
family         g(s)                       k_star
=============  =========================  =========
``vmf``        exp(s)                     1
``watson``     exp(s^2)                   2
``exp_power``  exp(s^b), integer b >= 1   b
``cauchy``     1/(1 + 2s), s=kappa(1-t)   --
=============  =========================  =========

The directional Cauchy family takes ``kappa * (1 - mu.x)`` as argument and
has no derivative data for the local-power formulas. Normalizing constants
are never needed: sampling goes through rejection on the cosine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .sphere import SeedLike, UnitSample, _uniform_rows, as_generator

FAMILIES = ("vmf", "watson", "exp_power", "cauchy")
_ALIASES = {
    "vonmisesfisher": "vmf",
    "von_mises_fisher": "vmf",
    "vmf": "vmf",
    "watson": "watson",
    "exppower": "exp_power",
    "exp_power": "exp_power",
    "directionalcauchy": "cauchy",
    "directional_cauchy": "cauchy",
    "cauchy": "cauchy",
}


class ModelError(ValueError):
    """An angular model that cannot be sampled or is out of scope."""


def canonical_family(name: str) -> str:
    try:
        return _ALIASES[name.lower()]
    except KeyError:
        raise ModelError(f"unknown family {name!r}; choose from {FAMILIES}") from None


def _unit(d: int) -> tuple[float, ...]:
    return (1.0,) + (0.0,) * (d - 1)


@dataclass(frozen=True)
class AngularModel:
    """Density ``c * g(kappa * mu.x)`` on S^(d-1); ``c`` is left uncomputed."""

    family: str
    kappa: float
    mu: tuple[float, ...]
    b: Optional[int] = None

    def __post_init__(self) -> None:
        fam = canonical_family(self.family)
        object.__setattr__(self, "family", fam)
        mu = tuple(float(v) for v in np.asarray(self.mu, dtype=float).ravel())
        if len(mu) < 2:
            raise ModelError("mu must have dimension >= 2")
        if abs(math.sqrt(sum(v * v for v in mu)) - 1.0) > 1e-10:
            raise ModelError("mu must be a unit vector")
        object.__setattr__(self, "mu", mu)
        if not (self.kappa >= 0 and math.isfinite(self.kappa)):
            raise ModelError(f"kappa must be finite and >= 0, got {self.kappa!r}")
        object.__setattr__(self, "kappa", float(self.kappa))
        if fam == "exp_power":
            if self.b is None or int(self.b) != self.b or self.b < 1:
                raise ModelError("exp_power needs a positive integer b")
            object.__setattr__(self, "b", int(self.b))
        elif self.b is not None:
            raise ModelError(f"b is only meaningful for exp_power, not {fam}")

    @property
    def d(self) -> int:
        return len(self.mu)

    @property
    def power(self) -> int:
        """Exponent of s in the angular function's log."""
        return {"vmf": 1, "watson": 2}.get(self.family, self.b or 0)

    # -- angular function -------------------------------------------------

    def log_g(self, t) -> np.ndarray:
        """``log g`` at cosine ``t = mu.x``."""
        t = np.asarray(t, dtype=float)
        k = self.kappa
        if self.family == "cauchy":
            return -np.log1p(2.0 * k * (1.0 - t))
        return (k * t) ** self.power

    def log_envelope(self) -> float:
        """``sup_{|t| <= 1} log g``, attained at t = 1 (or t = -1 for even powers)."""
        if self.family == "cauchy":
            return 0.0
        try:
            return self.kappa ** self.power
        except OverflowError:
            return math.inf

    def g_derivative(self, k: int) -> Optional[float]:
        """k-th derivative of ``g`` at zero; None for the Cauchy family."""
        if k < 0:
            raise ValueError("k must be >= 0")
        if self.family == "cauchy":
            return None
        # exp(s^p) = sum_m s^(pm)/m!, so g^(pm)(0) = (pm)!/m! and 0 otherwise
        p = self.power
        if k % p:
            return 0.0
        m = k // p
        return float(math.factorial(k) // math.factorial(m))

    def g_derivs_at_zero(self, order: int = 8) -> Optional[tuple[float, ...]]:
        if self.family == "cauchy":
            return None
        return tuple(self.g_derivative(k) for k in range(order + 1))

    @property
    def k_star(self) -> Optional[int]:
        """Smallest k >= 1 with nonzero g^(k)(0)."""
        if self.family == "cauchy":
            return None
        return self.power

    def with_kappa(self, kappa: float) -> "AngularModel":
        return AngularModel(self.family, kappa, self.mu, self.b)


def von_mises_fisher(kappa: float, d: int = 3, mu=None) -> AngularModel:
    return AngularModel("vmf", kappa, mu if mu is not None else _unit(d))


def watson(kappa: float, d: int = 3, mu=None) -> AngularModel:
    return AngularModel("watson", kappa, mu if mu is not None else _unit(d))


def exp_power(kappa: float, b: int, d: int = 3, mu=None) -> AngularModel:
    return AngularModel("exp_power", kappa, mu if mu is not None else _unit(d), b)


def directional_cauchy(kappa: float, d: int = 3, mu=None) -> AngularModel:
    return AngularModel("cauchy", kappa, mu if mu is not None else _unit(d))


@dataclass(frozen=True)
class ContiguousSpec:
    """Local alternatives with ``kappa_n = n^(-1/ell) * tau``."""

    family: str
    tau: float
    ell: float
    mu: tuple[float, ...] = (1.0, 0.0, 0.0)
    b: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", canonical_family(self.family))
        object.__setattr__(self, "mu", tuple(float(v) for v in self.mu))
        if not self.ell > 0:
            raise ValueError(f"ell must be > 0, got {self.ell!r}")
        if not self.tau >= 0:
            raise ValueError(f"tau must be >= 0, got {self.tau!r}")

    @property
    def d(self) -> int:
        return len(self.mu)

    def kappa(self, n: int) -> float:
        return n ** (-1.0 / self.ell) * self.tau

    def model(self, kappa: float = 0.0) -> AngularModel:
        return AngularModel(self.family, kappa, self.mu, self.b)


def resolve_contiguous(spec: ContiguousSpec, n: int) -> AngularModel:
    """The model at sample size ``n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return spec.model(spec.kappa(n))


def model_from_config(cfg: dict):
    """Build a model from ``{family, kappa | (tau, ell), mu, d}``.

    Returns an :class:`AngularModel` when ``kappa`` is given and a
    :class:`ContiguousSpec` when ``tau`` and ``ell`` are. ``mu`` defaults to
    the first basis vector.
    """
    cfg = dict(cfg)
    family = cfg.pop("family")
    d = int(cfg.pop("d", len(cfg["mu"]) if "mu" in cfg else 3))
    mu = tuple(cfg.pop("mu", _unit(d)))
    if len(mu) != d:
        raise ModelError(f"mu has {len(mu)} coordinates but d = {d}")
    b = cfg.pop("b", None)
    if "kappa" in cfg:
        if "tau" in cfg or "ell" in cfg:
            raise ModelError("give either kappa or (tau, ell), not both")
        return AngularModel(family, float(cfg.pop("kappa")), mu, b)
    if "tau" in cfg and "ell" in cfg:
        return ContiguousSpec(family, float(cfg.pop("tau")), float(cfg.pop("ell")), mu, b)
    raise ModelError("model config needs kappa or both tau and ell")


# -- sampling -------------------------------------------------------------


def sample_cosines(n: int, model: AngularModel, rng: np.random.Generator) -> np.ndarray:
    """Draw ``t = mu.X`` by rejection from the uniform-sphere cosine law.

    The proposal has density proportional to ``(1 - t^2)^((d-3)/2)`` (a
    rescaled symmetric Beta), and a proposal ``t`` is kept with probability
    ``g(t) / sup g``.
    """
    a = (model.d - 1) / 2
    log_env = model.log_envelope()
    if not math.isfinite(log_env):
        raise ModelError(f"angular function is not finite for {model}")
    grid = np.linspace(-1.0, 1.0, 101)
    if not np.all(np.isfinite(model.log_g(grid))):
        raise ModelError(f"angular function is not finite on [-1, 1] for {model}")

    out = np.empty(n)
    filled = 0
    rate = 0.5
    while filled < n:
        need = n - filled
        m = int(need / max(rate, 1e-3) * 1.2) + 16
        t = 2.0 * rng.beta(a, a, size=m) - 1.0
        logu = np.log(rng.random(m))
        keep = t[logu <= model.log_g(t) - log_env]
        rate = max(keep.size / m, 1e-3)
        take = min(keep.size, need)
        out[filled:filled + take] = keep[:take]
        filled += take
    return out


def sample_model(n: int, model: AngularModel, seed: SeedLike = None) -> UnitSample:
    """``n`` iid draws from ``model`` via the tangent-normal decomposition.

    ``x = t mu + sqrt(1 - t^2) xi`` with ``t`` from :func:`sample_cosines`
    and ``xi`` uniform on the unit sphere orthogonal to ``mu``.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    rng = as_generator(seed)
    d = model.d
    if model.kappa == 0:
        return UnitSample._trusted(_uniform_rows(rng, n, d))
    mu = np.array(model.mu)
    t = sample_cosines(n, model, rng)
    z = rng.standard_normal((n, d))
    z -= np.outer(z @ mu, mu)
    z /= np.linalg.norm(z, axis=1)[:, None]
    x = t[:, None] * mu + np.sqrt(np.clip(1.0 - t * t, 0.0, None))[:, None] * z
    x /= np.linalg.norm(x, axis=1)[:, None]
    return UnitSample._trusted(x)
