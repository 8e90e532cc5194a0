"""End-to-end acceptance checks, one test per criterion, at the stated tolerances.

Each test records a single PASS/FAIL line; the lines are repeated in the
pytest terminal summary under "acceptance criteria".
"""
import math
import time

import numpy as np
import pytest
from scipy import special

from ellipvol.core import Ellipsoid, SpectrumPSD
from ellipvol.intrinsic import (
    steiner_volume,
    v1_specialized,
    v2_specialized,
    vdm1_specialized,
    vdm2_specialized,
    vk_ball_closed_form,
    vk_duality,
    vk_quadrature,
    vk_rfunction,
)
from ellipvol.randsimplex import (
    expected_simplex_gaussian,
    expected_simplex_uniform,
    gaussian_prefactor,
    gaussian_prefactor_unsimplified,
    mc_gaussian_gram_vk,
    mc_simplex_gaussian,
    mc_simplex_uniform,
)
from ellipvol.verify import prop3_identity_check, steiner_mc_volume, vk_sphere_mc

N_MC = 1_000_000


def rel(x, y):
    return abs(x - y) / abs(y)


def z(mc, exact):
    return abs(mc.value - exact) / mc.error


def random_ellipsoids(seed, count, dmax=8, lo=1e-2, hi=1e2):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        d = int(rng.integers(1, dmax + 1))
        out.append(Ellipsoid(np.exp(rng.uniform(math.log(lo), math.log(hi), d))))
    return out


RANDOM_100 = random_ellipsoids(2024, 100)


def test_01_ball_exactness(record_criterion):
    t0 = time.perf_counter()
    worst = 0.0
    for d in range(2, 9):
        for r in (0.5, 1.0, 3.0):
            E = Ellipsoid.ball(d, r)
            for k in range(1, d + 1):
                worst = max(worst, rel(vk_quadrature(E, k).value, vk_ball_closed_form(r, d, k)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 5.0
    record_criterion(1, ok, f"ball exactness: max rel err {worst:.2e} (<= 1e-10), {elapsed:.2f} s (< 5 s)")
    assert ok


def test_02_endpoint_exactness(record_criterion):
    worst = max(rel(vk_quadrature(E, E.dim).value, E.volume()) for E in RANDOM_100)
    ok = worst <= 1e-10
    record_criterion(2, ok, f"V_d = kappa_d prod a on 100 ellipsoids: max rel err {worst:.2e} (<= 1e-10)")
    assert ok


def test_03_duality(record_criterion):
    worst_rel, worst_ratio, n = 0.0, 0.0, 0
    for E in RANDOM_100:
        for k in range(1, E.dim + 1):
            q, du = vk_quadrature(E, k), vk_duality(E, k)
            diff = abs(q.value - du.value)
            worst_rel = max(worst_rel, diff / q.value)
            worst_ratio = max(worst_ratio, diff / (q.error + du.error))
            n += 1
    ok = worst_rel <= 1e-8 and worst_ratio <= 1.0
    record_criterion(3, ok, f"duality on {n} (E, k): max rel {worst_rel:.2e} (<= 1e-8), "
                            f"max |diff| / (err_q + err_dual) {worst_ratio:.2f} (<= 1)")
    assert ok


def test_04_rfunction(record_criterion):
    rng = np.random.default_rng(4)
    worst = 0.0
    for E in random_ellipsoids(404, 50):
        k = int(rng.integers(1, E.dim + 1))
        worst = max(worst, rel(vk_rfunction(E, k).value, vk_quadrature(E, k).value))
    ok = worst <= 1e-9
    record_criterion(4, ok, f"R-function form on 50 instances: max rel {worst:.2e} (<= 1e-9)")
    assert ok


def test_05_specialisations(record_criterion):
    worst = 0.0
    for E in random_ellipsoids(505, 40):
        d = E.dim
        pairs = [(v1_specialized(E), 1), (vdm1_specialized(E), d - 1)]
        if d >= 2:
            pairs += [(v2_specialized(E), 2), (vdm2_specialized(E), d - 2)]
        for est, k in pairs:
            ref = vk_quadrature(E, k).value if k else 1.0
            worst = max(worst, rel(est.value, ref))
    # classical perimeter 4 a E(e^2) of the ellipse with semiaxes (2, 1)
    perimeter = 4 * 2.0 * special.ellipe(1 - (1 / 2) ** 2)
    p_err = rel(vk_quadrature(Ellipsoid([2.0, 1.0]), 1).value, perimeter / 2)
    ok = worst <= 1e-9 and p_err <= 1e-8
    record_criterion(5, ok, f"specialised displays: max rel {worst:.2e} (<= 1e-9); "
                            f"V_1(2,1) vs half perimeter rel {p_err:.2e} (<= 1e-8)")
    assert ok


def test_06_sphere_identity(record_criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(6)
    worst = 0.0
    for j in range(20):
        d = int(rng.integers(2, 6))
        E = Ellipsoid(np.exp(rng.uniform(math.log(0.2), math.log(5.0), d)))
        beta = float(rng.uniform(0.05, 4.0))
        # alpha > d - beta as stated; also beta - d and -1 keep the integrals finite
        alpha = max(d - beta, beta - d, -1.0) + float(rng.uniform(0.05, 2.0))
        i = int(rng.integers(d))
        worst = max(worst, prop3_identity_check(E, i, alpha, beta, N_MC, seed=600 + j).z_score)
    elapsed = time.perf_counter() - t0
    ok = worst <= 4 and elapsed < 60
    record_criterion(6, ok, f"sphere/line identity, 20 cases at n=1e6: max z {worst:.2f} (<= 4), "
                            f"{elapsed:.1f} s (< 60 s)")
    assert ok


def test_07_sphere_backend(record_criterion):
    worst, n = 0.0, 0
    for E in random_ellipsoids(707, 5, dmax=5, lo=0.1, hi=10):
        E = E if E.dim > 1 else Ellipsoid([*E.semiaxes, 1.0])
        for k in range(1, E.dim + 1):
            worst = max(worst, z(vk_sphere_mc(E, k, N_MC, seed=70 + n), vk_quadrature(E, k).value))
            n += 1
    for d in range(2, 6):
        E = Ellipsoid(np.linspace(0.3, 3.0, d))
        for k in range(1, d + 1):
            worst = max(worst, z(vk_sphere_mc(E, k, N_MC, seed=70 + n), vk_quadrature(E, k).value))
            n += 1
    ok = worst <= 4
    record_criterion(7, ok, f"sphere-integral Monte Carlo, {n} (E, k) with d <= 5: max z {worst:.2f} (<= 4)")
    assert ok


def test_08_gaussian_gram(record_criterion):
    worst, n = 0.0, 0
    for d in range(1, 6):
        E = Ellipsoid(np.geomspace(0.2, 4.0, d)) if d > 1 else Ellipsoid([1.7])
        for k in range(1, d + 1):
            worst = max(worst, z(mc_gaussian_gram_vk(E, k, N_MC, seed=80 + n), vk_quadrature(E, k).value))
            n += 1
    ok = worst <= 4
    record_criterion(8, ok, f"Gaussian Gram determinant, {n} (E, k): max z {worst:.2f} (<= 4)")
    assert ok


def test_09_steiner(record_criterion):
    worst, n = 0.0, 0
    for axes in ((2.0, 0.5), (1.5, 1.0, 0.4)):
        E = Ellipsoid(axes)
        for r in (0.25, 1.0):
            worst = max(worst, z(steiner_mc_volume(E, r, N_MC, seed=90 + n), steiner_volume(E, r).value))
            n += 1
    ok = worst <= 4
    record_criterion(9, ok, f"Steiner polynomial vs rejection sampling, d in {{2,3}}, r in {{0.25,1}}: "
                            f"max z {worst:.2f} (<= 4)")
    assert ok


def test_10_uniform_simplex(record_criterion):
    disk = Ellipsoid([1.0, 1.0])
    exact = 128 / (45 * math.pi)
    formula = expected_simplex_uniform(disk, 1).value
    mc_disk = mc_simplex_uniform(disk, 1, N_MC, seed=100)
    z_disk = z(mc_disk, exact)
    rng = np.random.default_rng(10)
    worst = 0.0
    for j, E in enumerate(random_ellipsoids(1010, 10, dmax=4, lo=0.2, hi=5.0)):
        k = int(rng.integers(1, E.dim + 1))
        worst = max(worst, z(mc_simplex_uniform(E, k, N_MC, seed=101 + j), expected_simplex_uniform(E, k).value))
    ok = abs(formula - exact) <= 1e-8 and z_disk <= 4 and worst <= 4
    record_criterion(10, ok, f"uniform simplex: disk |formula - 128/(45 pi)| {abs(formula - exact):.1e} "
                             f"(<= 1e-8), MC z {z_disk:.2f}; 10 random (E, k) max z {worst:.2f} (<= 4)")
    assert ok


def test_11_gaussian_simplex(record_criterion):
    worst_rel = 0.0
    for d in range(1, 51):
        exact = 2 * math.exp(math.lgamma((d + 1) / 2) - math.lgamma(d / 2))
        worst_rel = max(worst_rel, rel(expected_simplex_gaussian(SpectrumPSD([1.0] * d), 1).value, exact))
    rng = np.random.default_rng(11)
    worst_z = 0.0
    for j in range(10):
        d = int(rng.integers(1, 6))
        S = SpectrumPSD(np.exp(rng.uniform(math.log(0.1), math.log(10), d)))
        k = int(rng.integers(1, d + 1))
        worst_z = max(worst_z, z(mc_simplex_gaussian(S, k, N_MC, seed=110 + j), expected_simplex_gaussian(S, k).value))
    ok = worst_rel <= 1e-10 and worst_z <= 4
    record_criterion(11, ok, f"Gaussian simplex: identity spectrum d <= 50 max rel {worst_rel:.2e} (<= 1e-10); "
                             f"10 random spectra max z {worst_z:.2f} (<= 4)")
    assert ok


def test_12_prefactor_identity(record_criterion):
    worst = max(
        rel(gaussian_prefactor_unsimplified(d, k), gaussian_prefactor(k))
        for d in range(1, 51)
        for k in range(1, d + 1)
    )
    ok = worst <= 1e-12
    record_criterion(12, ok, f"Gaussian prefactor before/after duplication, 1 <= k <= d <= 50: "
                             f"max rel {worst:.2e} (<= 1e-12)")
    assert ok


def test_13_homogeneity_and_monotonicity(record_criterion):
    rng = np.random.default_rng(13)
    failures = 0
    for _ in range(200):
        d = int(rng.integers(1, 7))
        a = np.exp(rng.uniform(math.log(0.05), math.log(20), d))
        E = Ellipsoid(a)
        c = float(np.exp(rng.uniform(math.log(0.01), math.log(100))))
        bigger = a.copy()
        bigger[rng.integers(d)] *= float(rng.uniform(1.01, 3.0))
        for k in range(1, d + 1):
            v = vk_quadrature(E, k).value
            if rel(vk_quadrature(E.scaled(c), k).value, c**k * v) > 1e-10:
                failures += 1
            if not vk_quadrature(Ellipsoid(bigger), k).value > v:
                failures += 1
    ok = failures == 0
    record_criterion(13, ok, f"homogeneity V_k(cE) = c^k V_k(E) and monotonicity on 200 cases: {failures} failures")
    assert ok
