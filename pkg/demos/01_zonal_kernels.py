"""
Zonal kernels and harmonic dimensions
=====================================

Every Sobolev statistic is built from the degree-k kernels h_k, scaled
Gegenbauer polynomials (Chebyshev on the circle) normalised so that
h_k(1) equals d_k, the number of degree-k spherical harmonics.
"""

import numpy as np

from sobolev_sphere import harmonic_dimension, kernel_h, kernel_h_all

# On S^2 the kernels are (2k + 1) times the Legendre polynomials, so the
# dimensions are the odd numbers.
print([harmonic_dimension(k, 3) for k in range(1, 8)])

# The peak value sits at t = 1 and grows like k^(d-2).
for d in (2, 3, 5, 10):
    print(d, [kernel_h(k, 1.0, d) for k in (1, 5, 30)])

# Evaluating many degrees at once uses the three-term recurrence. The
# degree axis comes last, so a grid of cosines gives a (grid, K) table.
t = np.linspace(-1, 1, 9)
table = kernel_h_all(4, t, 3)
print(table.shape)
print(np.round(table, 3))

# Away from t = +-1 the kernels oscillate with amplitude well below d_k,
# and the gap widens with the degree.
t = np.linspace(-0.9, 0.9, 2001)
dims = np.array([harmonic_dimension(k, 3) for k in range(1, 13)])
print(np.round(np.abs(kernel_h_all(12, t, 3)).max(axis=0) / dims, 3))
