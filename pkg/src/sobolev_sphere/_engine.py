"""Compiled pairwise kernel sums.

One pass over the strict upper triangle of pairs accumulates
``sum_{i<j} h_k(x_i . x_j)`` for every degree k = 1..K at once. The GIL is
released so replications can run on a thread pool.
"""

import numba
import numpy as np

from .kernels import recurrence_coefficients

_FAST = {"reassoc", "contract", "nsz"}


@numba.njit(nogil=True, cache=True, fastmath=_FAST)
def _upper_pair_sums(x, K, p1, A, B):
    n, d = x.shape
    out = np.zeros(K)
    t = np.empty(n)
    c0 = np.empty(n)
    c1 = np.empty(n)
    for i in range(n - 1):
        m = n - i - 1
        for j in range(m):
            s = 0.0
            for a in range(d):
                s += x[i, a] * x[i + 1 + j, a]
            s = min(1.0, max(-1.0, s))
            t[j] = s
            c0[j] = 1.0
            c1[j] = p1 * s
        acc = 0.0
        for j in range(m):
            acc += c1[j]
        out[0] += acc
        for k in range(2, K + 1):
            a_k = A[k]
            b_k = B[k]
            acc = 0.0
            for j in range(m):
                ck = a_k * t[j] * c1[j] - b_k * c0[j]
                c0[j] = c1[j]
                c1[j] = ck
                acc += ck
            out[k - 1] += acc
    return out


def upper_pair_kernel_sums(x: np.ndarray, K: int) -> np.ndarray:
    """``[sum_{i<j} h_k(x_i . x_j) for k in 1..K]``."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    p1, A, B, scale = recurrence_coefficients(K, x.shape[1])
    raw = _upper_pair_sums(x, K, p1, A, B)
    return raw * scale[1:]
