"""Zonal kernels h_k, harmonic dimensions and related constants.

For ``d > 2`` the degree-k kernel is a rescaled Gegenbauer polynomial,

    h_k(t) = (1 + 2k/(d-2)) * C_k^{(d-2)/2}(t),

and for ``d = 2`` it is ``2 cos(k arccos t)``. In both cases ``h_k(1)`` is
the dimension ``d_k`` of the space of degree-k spherical harmonics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

DEFAULT_DEGREE_CAP = 50
_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class KernelSpec:
    """Dimension and maximum degree of a kernel evaluation.

    ``cap`` bounds ``max_degree``; beyond it polynomial magnitudes leave the
    range the recurrence has been validated on.
    """

    dim_d: int
    max_degree: int
    cap: int = DEFAULT_DEGREE_CAP

    def __post_init__(self) -> None:
        if self.dim_d < 2:
            raise ValueError("dim_d must be >= 2")
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")
        if self.max_degree > self.cap:
            raise ValueError(
                f"max_degree {self.max_degree} exceeds the degree cap {self.cap}"
            )

    @property
    def lam(self) -> float:
        return (self.dim_d - 2) / 2


def harmonic_dimension(k: int, d: int) -> int:
    """Dimension d_k of degree-k spherical harmonics on S^(d-1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if d < 2:
        raise ValueError("d must be >= 2")
    dk = math.comb(d + k - 3, d - 2) + math.comb(d + k - 2, d - 2)
    if dk > _INT64_MAX:
        raise OverflowError(f"d_k for k={k}, d={d} does not fit in 64 bits")
    return dk


def gegenbauer_coefficient(k: int, j: int, lam: float) -> float:
    """Coefficient c_{k,j}^lam of t^(k-2j) in the explicit Gegenbauer sum.

    ``C_k^lam(t) = sum_j (-1)^j c_{k,j}^lam t^(k-2j)``, evaluated in log space.
    """
    if lam <= 0:
        raise ValueError("lam must be > 0")
    if not 0 <= j <= k // 2:
        raise ValueError(f"j must lie in [0, {k // 2}], got {j}")
    logc = (
        (k - 2 * j) * math.log(2.0)
        + gammaln(k - j + lam)
        - gammaln(lam)
        - gammaln(j + 1)
        - gammaln(k - 2 * j + 1)
    )
    return float(np.exp(logc))


@lru_cache(maxsize=None)
def _exact_coefficients(k: int, d: int) -> tuple[Fraction, ...]:
    """Signed coefficients of h_k in powers t^k, t^(k-2), ..., as rationals."""
    if d == 2:
        # 2 T_k(t); T_k = (k/2) sum_j (-1)^j (k-j-1)!/(j!(k-2j)!) (2t)^(k-2j)
        out = []
        for j in range(k // 2 + 1):
            c = Fraction(k * math.factorial(k - j - 1),
                         math.factorial(j) * math.factorial(k - 2 * j))
            out.append((-1) ** j * c * 2 ** (k - 2 * j))
        return tuple(out)
    lam = Fraction(d - 2, 2)
    scale = 1 + Fraction(2 * k, d - 2)
    out = []
    for j in range(k // 2 + 1):
        # Gamma(k-j+lam)/Gamma(lam) is the rising factorial (lam)_{k-j}
        rising = Fraction(1)
        for r in range(k - j):
            rising *= lam + r
        c = Fraction(2 ** (k - 2 * j)) * rising / (
            math.factorial(j) * math.factorial(k - 2 * j)
        )
        out.append(scale * (-1) ** j * c)
    return tuple(out)


def _kernel_h_exact(k: int, t: float, d: int) -> float:
    coefs = _exact_coefficients(k, d)
    tf = Fraction(t)
    t2 = tf * tf
    acc = Fraction(0)
    # coefs run from t^k down to t^(k mod 2)
    p = tf ** (k % 2)
    for c in reversed(coefs):
        acc += c * p
        p *= t2
    return float(acc)


def kernel_h(k: int, t, d: int):
    """Kernel h_k(t) from its closed form.

    For ``d = 2`` this is ``2 cos(k arccos t)``. For ``d > 2`` the explicit
    coefficient sum is evaluated in exact rational arithmetic, so the result
    is correctly rounded; this is slow and meant for point evaluations and
    cross-checks. Use :func:`kernel_h_all` for bulk work.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if d < 2:
        raise ValueError("d must be >= 2")
    t_arr = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
    if d == 2:
        out = 2.0 * np.cos(k * np.arccos(t_arr))
    else:
        flat = [_kernel_h_exact(k, float(v), d) for v in t_arr.ravel()]
        out = np.array(flat).reshape(t_arr.shape)
    return float(out) if out.ndim == 0 else out


def recurrence_coefficients(K: int, d: int):
    """Three-term recurrence for the kernels of degree 1..K.

    Returns ``(p1, A, B, scale)`` such that, with ``P_0 = 1`` and
    ``P_1 = p1 * t``,

        P_k = A[k] * t * P_{k-1} - B[k] * P_{k-2},   h_k = scale[k] * P_k

    (arrays indexed by degree; entries 0 and 1 of ``A`` and ``B`` unused).
    """
    ks = np.arange(K + 1, dtype=float)
    A = np.zeros(K + 1)
    B = np.zeros(K + 1)
    if d == 2:
        p1 = 1.0
        A[2:] = 2.0
        B[2:] = 1.0
        scale = np.full(K + 1, 2.0)
    else:
        lam = (d - 2) / 2
        p1 = 2.0 * lam
        A[2:] = 2.0 * (ks[2:] - 1 + lam) / ks[2:]
        B[2:] = (ks[2:] - 2 + 2 * lam) / ks[2:]
        scale = 1.0 + 2.0 * ks / (d - 2)
    scale[0] = 1.0
    return p1, A, B, scale


def kernel_h_all(K: int, t, d: int) -> np.ndarray:
    """``[h_1(t), ..., h_K(t)]`` via the three-term recurrence.

    ``t`` may be a scalar or an array; the degree axis is appended last.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    if d < 2:
        raise ValueError("d must be >= 2")
    t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
    p1, A, B, scale = recurrence_coefficients(K, d)
    out = np.empty(t.shape + (K,))
    prev = np.ones_like(t)
    cur = p1 * t
    out[..., 0] = scale[1] * cur
    for k in range(2, K + 1):
        prev, cur = cur, A[k] * t * cur - B[k] * prev
        out[..., k - 1] = scale[k] * cur
    return out


def moment_a(m: int, d: int) -> float:
    """E[t^m] for the cosine t = mu.X of a uniform X on S^(d-1)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m % 2:
        return 0.0
    out = 1.0
    for r in range(m // 2):
        out *= (1 + 2 * r) / (d + 2 * r)
    return out


def weight_w(k: int, d: int) -> float:
    """Normalizing weight w_k of the degree-k noncentrality."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if d < 2:
        raise ValueError("d must be >= 2")
    if d == 2:
        return math.sqrt(2.0)
    return (1 + 2 * k / (d - 2)) / math.sqrt(harmonic_dimension(k, d))
