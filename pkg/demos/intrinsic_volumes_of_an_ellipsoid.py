"""
Intrinsic volumes of an ellipsoid
=================================

Compute V_0 .. V_d of an axis-aligned ellipsoid and compare the
independent routes the library offers.
"""

import math

import numpy as np

from ellipvol import Ellipsoid, intrinsic_volume, intrinsic_volumes

# An ellipsoid is given by its semiaxes; it is centred at the origin.
E = Ellipsoid([3.0, 2.0, 1.0])

# The report holds every V_k together with an error estimate and the
# backend that produced it.  V_0 and V_d come from closed forms.
report = intrinsic_volumes(E)
for entry in report.entries:
    print(f"V_{entry.k} = {entry.value:.15g}  (+/- {entry.estimate.error:.1e}, {entry.backend})")

# In three dimensions V_2 is half the surface area and V_1 is
# proportional to the mean width.
print("surface area:", 2 * report[2].value)
print("mean width:  ", report[1].value / 2)

# The same number by three different formulas.
for backend in ("quadrature", "duality", "rfunction"):
    print(backend, intrinsic_volume(E, 1, backend).value)

# For an ellipse V_1 is half the perimeter; compare with a brute-force
# polygon approximation.
a, b = 2.0, 1.0
theta = np.linspace(0, 2 * np.pi, 1_000_001)
pts = np.stack([a * np.cos(theta), b * np.sin(theta)], axis=1)
polygon = np.sum(np.linalg.norm(np.diff(pts, axis=0), axis=1))
print("V_1(ellipse)", intrinsic_volume(Ellipsoid([a, b]), 1).value, "polygon / 2", polygon / 2)

# Scaling: V_k is homogeneous of degree k.
c = 2.5
print([round(float(v2 / v1), 12) for v1, v2 in zip(report.values, intrinsic_volumes(E.scaled(c)).values)])
print([c**k for k in range(4)])

# Very elongated ellipsoids are still fine; the report warns once the
# semiaxis ratio gets extreme.
needle = intrinsic_volumes(Ellipsoid([1e6, 1.0, 1e-6]))
print(needle.values, needle.warnings)
print("V_1 of a needle is close to its length:", needle[1].value, "vs", 2e6, math.isclose(needle[1].value, 2e6, rel_tol=1e-5))
