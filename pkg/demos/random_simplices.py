"""
Random simplices in ellipsoids and Gaussian clouds
==================================================

Mean volume of the simplex spanned by k+1 random points, either uniform
in an ellipsoid or drawn from a centred Gaussian.
"""

import math

from ellipvol import Ellipsoid, SpectrumPSD, expected_simplex_gaussian, expected_simplex_uniform
from ellipvol.randsimplex import mc_simplex_gaussian, mc_simplex_uniform

# Mean distance between two uniform points in the unit disk.
disk = Ellipsoid([1.0, 1.0])
print(expected_simplex_uniform(disk, 1).value, 128 / (45 * math.pi))
mc = mc_simplex_uniform(disk, 1, n_samples=1_000_000, seed=0)
print(f"sampling: {mc.value:.5f} +/- {mc.error:.5f}")

# Mean triangle area in the disk.
print(expected_simplex_uniform(disk, 2).value, 35 / (48 * math.pi))

# Flattening an ellipsoid: the mean tetrahedron shrinks linearly with the
# short axis (uniform points scale with it), the mean triangle does not.
for c in (1.0, 0.1, 0.01):
    E = Ellipsoid([2.0, 1.0, c])
    print(c, expected_simplex_uniform(E, 3).value / c, expected_simplex_uniform(E, 2).value)

# Gaussian points: only the covariance spectrum matters.
S = SpectrumPSD([4.0, 1.0, 0.25])
for k in (1, 2, 3):
    exact = expected_simplex_gaussian(S, k).value
    mc = mc_simplex_gaussian(S, k, n_samples=500_000, seed=k)
    print(f"k={k}: formula {exact:.6f}  sampling {mc.value:.6f} +/- {mc.error:.6f}")

# Identity covariance and k=1: the mean distance is
# 2 Gamma((d+1)/2) / Gamma(d/2), roughly sqrt(2 d) for large d.
for d in (1, 2, 10, 50):
    got = expected_simplex_gaussian(SpectrumPSD([1.0] * d), 1).value
    print(d, got, 2 * math.exp(math.lgamma((d + 1) / 2) - math.lgamma(d / 2)), math.sqrt(2 * d))
