"""Independent cross-checks of the deterministic formulas.

The oracles here never touch the elliptic integrals: they integrate over the
sphere or sample the parallel body directly.  Identity checks report a
z-score ``|mc - exact| / se`` (statistical) or a relative error
(deterministic); a suite passes when every z-score is at most 4.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _mc
from .core import (
    Ellipsoid,
    ScalarEstimate,
    SpectrumPSD,
    distance_to_ellipsoid,
    log_gamma,
    sphere_area,
    unit_ball_volume,
)
from .intrinsic import (
    steiner_volume,
    vk_ball_closed_form,
    vk_duality,
    vk_quadrature,
    vk_rfunction,
)
from .quad import DEFAULT_CONFIG, QuadratureConfig, check_prop3_domain, prop3_rhs
from .randsimplex import (
    expected_simplex_gaussian,
    expected_simplex_uniform,
    mc_simplex_gaussian,
    mc_simplex_uniform,
)
from .sympoly import leave_one_out_all

__all__ = [
    "SphereSampler",
    "vk_sphere_mc",
    "sphere_gram_vk",
    "sphere_integral_mc",
    "Prop3Report",
    "prop3_identity_check",
    "steiner_mc_volume",
    "CheckResult",
    "SUITES",
    "run_suite",
]

Z_MAX = 4.0


class SphereSampler:
    """Seeded stream of points uniform on the unit sphere of R^d."""

    def __init__(self, d: int, seed: int):
        if d < 1:
            raise ValueError("dimension must be >= 1")
        self.dim = d
        self.seed = seed
        self._rng = np.random.default_rng(seed)

    def sample(self, n: int) -> np.ndarray:
        return _mc.uniform_sphere(self._rng, n, self.dim)


def _check_k(E: Ellipsoid, k: int) -> int:
    if int(k) != k or not 1 <= k <= E.dim:
        raise ValueError(f"k must be an integer in [1, {E.dim}], got {k!r}")
    return int(k)


def vk_sphere_mc(
    E: Ellipsoid, k: int, n_samples: int, seed: int, threads: int | None = None
) -> ScalarEstimate:
    """``V_k`` from its sphere-integral form, by Monte Carlo over the sphere.

    All ``d`` sphere integrals ``int u_i^2 / h_E(u)^k`` share each sample.
    """
    k = _check_k(E, k)
    d = E.dim
    a2 = E.squared
    coef = a2 * leave_one_out_all(a2, k - 1)
    c = sphere_area(d) / (k * unit_ball_volume(d - k))

    def sample(rng, n):
        u = _mc.uniform_sphere(rng, n, d)
        u2 = u * u
        h2 = u2 @ a2
        return c * (u2 @ coef) / h2 ** (0.5 * k)

    return _mc.run(sample, n_samples, seed, threads)


def sphere_gram_vk(
    E: Ellipsoid, k: int, n_samples: int, seed: int, threads: int | None = None
) -> ScalarEstimate:
    """``V_k`` from the Gram determinant of ``k`` uniform sphere directions.

    Same representation as the Gaussian one with the radial parts pulled
    out as ``(E|xi|)^k``, ``E|xi| = sqrt(2) Gamma((d+1)/2) / Gamma(d/2)``.
    """
    k = _check_k(E, k)
    d, a = E.dim, E.a
    mean_norm = math.sqrt(2.0) * math.exp(log_gamma(0.5 * (d + 1)) - log_gamma(0.5 * d))
    c = (2 * math.pi) ** (0.5 * k) / math.factorial(k) * mean_norm**k

    def sample(rng, n):
        eta = _mc.uniform_sphere(rng, n * k, d).reshape(n, k, d) * a
        return c * _mc.sqrt_gram_det(eta)

    return _mc.run(sample, n_samples, seed, threads)


def sphere_integral_mc(
    E: Ellipsoid, i: int, alpha: float, beta: float, n_samples: int, seed: int,
    threads: int | None = None,
) -> ScalarEstimate:
    """Monte Carlo ``int_{S^{d-1}} |u_i|^alpha / h_E(u)^beta sigma(du)``; ``i`` is 0-based."""
    d = E.dim
    if not 0 <= i < d:
        raise IndexError(f"index {i} out of range for d={d}")
    check_prop3_domain(d, alpha, beta)
    a2 = E.squared
    area = sphere_area(d)

    def sample(rng, n):
        u = _mc.uniform_sphere(rng, n, d)
        h2 = (u * u) @ a2
        return area * np.abs(u[:, i]) ** alpha / h2 ** (0.5 * beta)

    return _mc.run(sample, n_samples, seed, threads)


@dataclass(frozen=True)
class Prop3Report:
    lhs: ScalarEstimate
    rhs: ScalarEstimate
    z_score: float


def prop3_identity_check(
    E: Ellipsoid,
    i: int,
    alpha: float,
    beta: float,
    n_samples: int,
    seed: int,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    threads: int | None = None,
) -> Prop3Report:
    """Sphere integral by Monte Carlo against its line-integral form."""
    lhs = sphere_integral_mc(E, i, alpha, beta, n_samples, seed, threads)
    rhs = prop3_rhs(E, i, alpha, beta, cfg)
    return Prop3Report(lhs, rhs, abs(lhs.value - rhs.value) / lhs.error)


def steiner_mc_volume(
    E: Ellipsoid, r: float, n_samples: int, seed: int, threads: int | None = None
) -> ScalarEstimate:
    """Volume of ``E + r B^d`` by rejection sampling in its bounding box."""
    if not r >= 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    d = E.dim
    half = E.a + r
    box = float(np.prod(2 * half))

    def sample(rng, n):
        x = rng.uniform(-half, half, size=(n, d))
        return box * (distance_to_ellipsoid(E, x) <= r).astype(float)

    # sample std of the scaled indicator is the binomial standard error
    return _mc.run(sample, n_samples, seed, threads)


# -- suites -----------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    metric: str
    value: float
    expected: float
    score: float


def _z_check(name, mc: ScalarEstimate, exact: float) -> CheckResult:
    z = abs(mc.value - exact) / mc.error if mc.error > 0 else math.inf
    return CheckResult(name, z <= Z_MAX, "z_score", mc.value, exact, z)


def _rel_check(name, got: float, exact: float, tol: float) -> CheckResult:
    rel = abs(got - exact) / abs(exact)
    return CheckResult(name, rel <= tol, "rel_error", got, exact, rel)


def _suite_ball(seed: int, n: int) -> list[CheckResult]:
    out = []
    for d in range(2, 6):
        for r in (0.5, 1.0, 3.0):
            E = Ellipsoid.ball(d, r)
            for k in range(1, d + 1):
                exact = vk_ball_closed_form(r, d, k)
                for name, fn in (("quadrature", vk_quadrature), ("duality", vk_duality),
                                 ("rfunction", vk_rfunction)):
                    out.append(_rel_check(f"ball d={d} r={r} k={k} {name}",
                                          fn(E, k).value, exact, 1e-10))
    return out


def _random_ellipsoid(rng, d, lo=1e-2, hi=1e2) -> Ellipsoid:
    return Ellipsoid(np.exp(rng.uniform(math.log(lo), math.log(hi), d)))


def _suite_duality(seed: int, n: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(20):
        E = _random_ellipsoid(rng, int(rng.integers(2, 9)))
        for k in range(1, E.dim + 1):
            q, du = vk_quadrature(E, k), vk_duality(E, k)
            out.append(_rel_check(f"duality a={np.round(E.a, 4).tolist()} k={k}",
                                  du.value, q.value, 1e-8))
    return out


def _suite_prop3(seed: int, n: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    for j in range(5):
        d = int(rng.integers(2, 6))
        E = Ellipsoid(rng.uniform(0.3, 3.0, d))
        beta = float(rng.uniform(0.1, 4.0))
        alpha = float(max(d - beta, beta - d, -1.0) + rng.uniform(0.1, 2.0))
        i = int(rng.integers(d))
        rep = prop3_identity_check(E, i, alpha, beta, n, seed + j)
        out.append(CheckResult(f"sphere identity d={d} i={i} alpha={alpha:.3f} beta={beta:.3f}",
                               rep.z_score <= Z_MAX, "z_score", rep.lhs.value,
                               rep.rhs.value, rep.z_score))
    return out


def _suite_steiner(seed: int, n: int) -> list[CheckResult]:
    out = []
    for j, (axes, r) in enumerate((((2.0, 1.0), 0.5), ((1.0, 1.0), 1.0), ((2.0, 1.0, 1.0), 0.5))):
        E = Ellipsoid(axes)
        out.append(_z_check(f"steiner a={list(axes)} r={r}",
                            steiner_mc_volume(E, r, n, seed + j), steiner_volume(E, r).value))
    return out


def _suite_simplex(seed: int, n: int) -> list[CheckResult]:
    out = [_rel_check("uniform disk k=1 closed value",
                      expected_simplex_uniform(Ellipsoid([1, 1]), 1).value,
                      128 / (45 * math.pi), 1e-8)]
    for j, (axes, k) in enumerate((((1.0, 1.0), 1), ((2.0, 0.5), 2), ((3.0, 1.0, 0.5), 2))):
        E = Ellipsoid(axes)
        out.append(_z_check(f"uniform simplex a={list(axes)} k={k}",
                            mc_simplex_uniform(E, k, n, seed + j),
                            expected_simplex_uniform(E, k).value))
    for j, (lam, k) in enumerate((((1.0,), 1), ((1.0, 1.0, 1.0), 3), ((4.0, 1.0, 0.25), 2))):
        S = SpectrumPSD(lam)
        out.append(_z_check(f"gaussian simplex lambda={list(lam)} k={k}",
                            mc_simplex_gaussian(S, k, n, seed + 10 + j),
                            expected_simplex_gaussian(S, k).value))
    return out


SUITES: dict[str, Callable[[int, int], list[CheckResult]]] = {
    "ball": _suite_ball,
    "duality": _suite_duality,
    "prop3": _suite_prop3,
    "steiner": _suite_steiner,
    "simplex": _suite_simplex,
}


def run_suite(name: str, seed: int = 0, n_samples: int = 200_000) -> list[CheckResult]:
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return suite(seed, n_samples)
