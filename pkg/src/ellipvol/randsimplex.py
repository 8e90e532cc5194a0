"""Expected volumes of random simplices in an ellipsoid and of Gaussian simplices.

Both closed forms are a Gamma-function prefactor times the same weighted sum
of elliptic integrals that gives the intrinsic volumes.  Each comes with a
Monte Carlo estimator of the left-hand side for cross-checking.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import _mc
from .core import Ellipsoid, ScalarEstimate, SpectrumPSD, log_gamma
from .intrinsic import weighted_elliptic_sum
from .quad import DEFAULT_CONFIG, QuadratureConfig

__all__ = [
    "SimplexExpectationRequest",
    "expected_simplex",
    "expected_simplex_uniform",
    "expected_simplex_gaussian",
    "uniform_prefactor",
    "gaussian_prefactor",
    "gaussian_prefactor_unsimplified",
    "mc_simplex_uniform",
    "mc_simplex_gaussian",
    "mc_gaussian_gram_vk",
]


def _check_k(d: int, k: int) -> int:
    if int(k) != k or not 1 <= k <= d:
        raise ValueError(f"k must be an integer in [1, {d}], got {k!r}")
    return int(k)


def uniform_prefactor(d: int, k: int) -> float:
    """Constant in front of the elliptic sum for uniform points in an ellipsoid."""
    m = 0.5 * (d + 1) * (k + 1)
    return math.exp(
        -k * math.log(2.0)
        - log_gamma(0.5 * k + 1)
        + log_gamma(m + 1)
        - log_gamma(m + 0.5)
        + (k + 1) * (log_gamma(0.5 * d + 1) - log_gamma(0.5 * (d + 1) + 1))
    )


def gaussian_prefactor(k: int) -> float:
    """``sqrt(k+1) / (Gamma(k/2 + 1) 2^(k/2))``; independent of the dimension."""
    return math.exp(0.5 * math.log(k + 1) - log_gamma(0.5 * k + 1) - 0.5 * k * math.log(2.0))


def gaussian_prefactor_unsimplified(d: int, k: int) -> float:
    """The Gaussian constant before the duplication formula folds the d-dependence away.

    ``(d-k)!/d! * 2^(k/2) sqrt(k+1) / Gamma(k/2+1)
    * Gamma(d/2+1) Gamma((d+1)/2) / (Gamma((d-k)/2+1) Gamma((d-k+1)/2))``
    """
    _check_k(d, k)
    return math.exp(
        log_gamma(d - k + 1)
        - log_gamma(d + 1)
        + 0.5 * k * math.log(2.0)
        + 0.5 * math.log(k + 1)
        - log_gamma(0.5 * k + 1)
        + log_gamma(0.5 * d + 1)
        + log_gamma(0.5 * (d + 1))
        - log_gamma(0.5 * (d - k) + 1)
        - log_gamma(0.5 * (d - k + 1))
    )


def expected_simplex_uniform(
    E: Ellipsoid, k: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> ScalarEstimate:
    """Mean k-volume of the simplex spanned by ``k+1`` uniform points in ``E``."""
    k = _check_k(E.dim, k)
    return weighted_elliptic_sum(E.squared, k, cfg).scaled(uniform_prefactor(E.dim, k))


def expected_simplex_gaussian(
    spec: SpectrumPSD, k: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> ScalarEstimate:
    """Mean k-volume of the simplex spanned by ``k+1`` centred Gaussian points.

    Only the covariance spectrum matters; use
    :meth:`SpectrumPSD.from_covariance` for a full matrix.
    """
    k = _check_k(spec.dim, k)
    return weighted_elliptic_sum(spec.lam, k, cfg).scaled(gaussian_prefactor(k))


@dataclass(frozen=True)
class SimplexExpectationRequest:
    model: Literal["uniform_in_ellipsoid", "gaussian"]
    shape: Ellipsoid | SpectrumPSD
    k: int

    def __post_init__(self):
        if self.model not in ("uniform_in_ellipsoid", "gaussian"):
            raise ValueError(f"unknown model {self.model!r}")
        want = Ellipsoid if self.model == "uniform_in_ellipsoid" else SpectrumPSD
        if not isinstance(self.shape, want):
            raise TypeError(f"model {self.model!r} needs a {want.__name__}")
        _check_k(self.shape.dim, self.k)


def expected_simplex(
    req: SimplexExpectationRequest, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> ScalarEstimate:
    if req.model == "uniform_in_ellipsoid":
        return expected_simplex_uniform(req.shape, req.k, cfg)
    return expected_simplex_gaussian(req.shape, req.k, cfg)


# -- Monte Carlo oracles -------------------------------------------------------


def mc_simplex_uniform(
    E: Ellipsoid, k: int, n_samples: int, seed: int, threads: int | None = None
) -> ScalarEstimate:
    k = _check_k(E.dim, k)
    d, a = E.dim, E.a

    def sample(rng, n):
        pts = _mc.uniform_ball(rng, n * (k + 1), d).reshape(n, k + 1, d) * a
        return _mc.simplex_volumes(pts)

    return _mc.run(sample, n_samples, seed, threads)


def mc_simplex_gaussian(
    spec: SpectrumPSD, k: int, n_samples: int, seed: int, threads: int | None = None
) -> ScalarEstimate:
    k = _check_k(spec.dim, k)
    d, sd = spec.dim, np.sqrt(spec.lam)

    def sample(rng, n):
        pts = rng.standard_normal((n, k + 1, d)) * sd
        return _mc.simplex_volumes(pts)

    return _mc.run(sample, n_samples, seed, threads)


def mc_gaussian_gram_vk(
    E: Ellipsoid, k: int, n_samples: int, seed: int, threads: int | None = None
) -> ScalarEstimate:
    """``V_k = (2 pi)^(k/2) / k! * E sqrt(det <A xi_i, A xi_j>)`` with standard Gaussian ``xi``."""
    k = _check_k(E.dim, k)
    d, a = E.dim, E.a
    c = (2 * math.pi) ** (0.5 * k) / math.factorial(k)

    def sample(rng, n):
        xi = rng.standard_normal((n, k, d)) * a
        return c * _mc.sqrt_gram_det(xi)

    return _mc.run(sample, n_samples, seed, threads)
