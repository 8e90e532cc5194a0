"""
Parallel bodies and the Steiner polynomial
==========================================

The volume of E + rB is a polynomial in r whose coefficients are the
intrinsic volumes.  Here we check it against rejection sampling.
"""

import numpy as np

from ellipvol import Ellipsoid, quermassintegral, steiner_volume
from ellipvol.verify import steiner_mc_volume

E = Ellipsoid([2.0, 1.0, 0.5])

for r in (0.0, 0.25, 1.0, 3.0):
    exact = steiner_volume(E, r)
    mc = steiner_mc_volume(E, r, n_samples=400_000, seed=1)
    z = abs(mc.value - exact.value) / mc.error if mc.error else 0.0
    print(f"r={r:4}: polynomial {exact.value:.10f}  sampling {mc.value:.4f} +/- {mc.error:.4f}  (z={z:.2f})")

# Quermassintegrals are the same numbers in another normalisation:
# W_0 is the volume and W_d is the volume of the unit ball.
print([quermassintegral(E, j).value for j in range(4)])

# For large r the parallel body looks like a ball of radius r.
r = np.array([10.0, 100.0, 1000.0])
print([steiner_volume(E, float(x)).value / (4 / 3 * np.pi * x**3) for x in r.tolist()])
