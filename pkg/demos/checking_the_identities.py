"""
Checking the identities by simulation
=====================================

Every closed-form route has a Monte Carlo counterpart.  The verify
module bundles them into suites; here they are called one by one.
"""

from ellipvol import Ellipsoid, intrinsic_volume
from ellipvol.quad import prop3_rhs
from ellipvol.randsimplex import mc_gaussian_gram_vk
from ellipvol.verify import run_suite, sphere_integral_mc, vk_sphere_mc

E = Ellipsoid([2.0, 1.0, 0.5, 0.3])

# V_k as an integral over the unit sphere and as a mean Gram determinant.
for k in range(1, 5):
    exact = intrinsic_volume(E, k).value
    s = vk_sphere_mc(E, k, n_samples=500_000, seed=k)
    g = mc_gaussian_gram_vk(E, k, n_samples=500_000, seed=k)
    print(f"k={k}: {exact:.6f}  sphere {s.value:.6f} +/- {s.error:.1e}  gram {g.value:.6f} +/- {g.error:.1e}")

# An integral of |u_i|^alpha / h_E(u)^beta over the sphere equals a
# one-dimensional integral; alpha and beta need not be integers.
alpha, beta = 1.5, 2.7
lhs = sphere_integral_mc(E, 1, alpha, beta, n_samples=1_000_000, seed=3)
rhs = prop3_rhs(E, 1, alpha, beta)
print(lhs.value, "+/-", lhs.error, "vs", rhs.value)

# The packaged suites return one CheckResult per comparison.
for name in ("ball", "duality", "prop3", "steiner", "simplex"):
    checks = run_suite(name, seed=0, n_samples=200_000)
    print(f"{name:8s} {sum(c.passed for c in checks)}/{len(checks)} passed")
