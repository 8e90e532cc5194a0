"""Intrinsic volumes ``V_0 .. V_d`` of an ellipsoid.

Backends
--------
quadrature
    ``V_k = kappa_k * sum_i a_i^2 s_{k-1}(a^2 without i) * I_{k,i}`` with the
    one-dimensional elliptic integrals ``I_{k,i}`` from :mod:`ellipvol.quad`.
duality
    ``V_k(E) = kappa_k / (kappa_d kappa_{d-k}) * V_d(E) * V_{d-k}(E polar)``.
rfunction
    The same sum with each integral expressed as a Carlson R-function in the
    variable ``t**2``.
closed_form
    ``V_0 = 1`` and ``V_d = kappa_d * prod(a)``.

Every quadrature-based value is computed on the ellipsoid rescaled to
``a_max = 1`` and mapped back with ``V_k(cE) = c**k V_k(E)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .core import (
    Ellipsoid,
    ScalarEstimate,
    log_beta,
    log_unit_ball_volume,
    polar,
    unit_ball_volume,
)
from .quad import DEFAULT_CONFIG, QuadratureConfig, carlson_R, elliptic_integrals, semi_infinite
from .sympoly import leave_one_out_all

__all__ = [
    "Backend",
    "IntrinsicEntry",
    "IntrinsicVolumeReport",
    "weighted_elliptic_sum",
    "vk_quadrature",
    "vk_ball_closed_form",
    "vk_closed_form",
    "vk_duality",
    "vk_rfunction",
    "v1_specialized",
    "v2_specialized",
    "vdm1_specialized",
    "vdm2_specialized",
    "intrinsic_volume",
    "intrinsic_volumes",
    "default_backend",
    "steiner_volume",
    "quermassintegral",
]

Backend = Literal["closed_form", "quadrature", "duality", "rfunction"]

_EPS = np.finfo(float).eps
ECCENTRICITY_WARN = 1e10


def _check_k(E: Ellipsoid, k: int, lo: int = 1) -> int:
    if int(k) != k or not lo <= k <= E.dim:
        raise ValueError(f"k must be an integer in [{lo}, {E.dim}], got {k!r}")
    return int(k)


def _rounding_floor(d: int, value: float) -> float:
    # coefficient tables, log-space constants and the d-term sum each lose a few ulps
    return 8.0 * (d + 1) * _EPS * abs(value)


def weighted_elliptic_sum(
    z, k: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> ScalarEstimate:
    """``sum_i z_i s_{k-1}(z without i) * I_{k,i}(z)`` for squared semiaxes ``z``.

    This is the sum shared by the intrinsic volumes and both random-simplex
    formulas.  Rescales ``z`` to ``max(z) = 1`` first; the sum is
    homogeneous of degree ``k/2`` in ``z``.
    """
    z = np.asarray(z, dtype=float).ravel()
    scale = float(z.max())
    w = z / scale
    coef = w * leave_one_out_all(w, k - 1)
    vals, errs, ok = elliptic_integrals(w, k, 1.0, cfg)
    total = math.fsum(coef * vals)
    err = math.fsum(coef * errs)
    factor = scale ** (0.5 * k)
    return ScalarEstimate(
        total * factor, (err + _rounding_floor(z.size, total)) * factor, converged=bool(ok.all())
    )


def vk_quadrature(
    E: Ellipsoid, k: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> ScalarEstimate:
    """``V_k`` from the elliptic-integral sum, ``1 <= k <= d``."""
    k = _check_k(E, k)
    return weighted_elliptic_sum(E.squared, k, cfg).scaled(unit_ball_volume(k))


def vk_ball_closed_form(r: float, d: int, k: int) -> float:
    """``V_k(r B^d) = C(d, k) * kappa_d / kappa_{d-k} * r**k``."""
    if not r > 0:
        raise ValueError("radius must be positive")
    if not 0 <= k <= d:
        raise ValueError(f"k must lie in [0, {d}]")
    log_binom = math.lgamma(d + 1) - math.lgamma(k + 1) - math.lgamma(d - k + 1)
    return math.exp(
        log_binom + log_unit_ball_volume(d) - log_unit_ball_volume(d - k) + k * math.log(r)
    )


def vk_closed_form(E: Ellipsoid, k: int) -> ScalarEstimate:
    """Closed forms available for every ellipsoid: ``k = 0`` and ``k = d``."""
    if k == 0:
        return ScalarEstimate(1.0)
    if k == E.dim:
        v = E.volume()
        return ScalarEstimate(v, 4 * (E.dim + 1) * _EPS * v)
    raise ValueError(f"no closed form for k={k} in dimension {E.dim}")


def vk_duality(
    E: Ellipsoid, k: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> ScalarEstimate:
    """``V_k`` through the polar ellipsoid, ``0 <= k <= d``."""
    k = _check_k(E, k, lo=0)
    d = E.dim
    if k == d:
        return vk_closed_form(E, d)
    dual = vk_quadrature(polar(E), d - k, cfg)
    log_c = (
        log_unit_ball_volume(k)
        - log_unit_ball_volume(d - k)
        + float(np.sum(np.log(E.a)))
    )
    c = math.exp(log_c)
    v = c * dual.value
    return ScalarEstimate(v, c * dual.error + _rounding_floor(d, v), converged=dual.converged)


def vk_rfunction(
    E: Ellipsoid, k: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> ScalarEstimate:
    """``V_k`` with each elliptic integral written as ``R_{-k/2}(e_i + 1/2, a^2)``."""
    k = _check_k(E, k)
    d = E.dim
    scale = float(E.a.max())
    w = E.squared / scale**2
    coef = w * leave_one_out_all(w, k - 1)
    terms, errs, ok = [], [], True
    for i in range(d):
        b = np.full(d, 0.5)
        b[i] += 1.0
        r = carlson_R(0.5 * k, b, w, cfg)
        terms.append(coef[i] * r.value)
        errs.append(coef[i] * r.error)
        ok = ok and r.converged
    c = 0.5 * math.exp(log_unit_ball_volume(k) + log_beta(0.5 * (d + 2 - k), 0.5 * k))
    c *= scale**k
    v = c * math.fsum(terms)
    return ScalarEstimate(v, c * math.fsum(errs) + _rounding_floor(d, v), converged=ok)


# -- low/high order displays ------------------------------------------------
#
# These evaluate their own one-dimensional integrands rather than calling the
# generic sum, so they double as an independent check of it.


def _rescaled(E: Ellipsoid):
    c = float(E.a.max())
    return c, E.squared / c**2


def _integrals_t2_plus(w, power: float, cfg: QuadratureConfig):
    # int t^(power-1) / ((t^2 + w_i) prod_j sqrt(t^2 + w_j)) dt for every i
    log_w = np.log(w)

    def log_f(y):
        L = np.logaddexp(2.0 * y[None, :], log_w[:, None])
        return ((power - 1.0) * y - 0.5 * L.sum(axis=0))[None, :] - L

    return semi_infinite(log_f, cfg)


def v1_specialized(E: Ellipsoid, cfg: QuadratureConfig = DEFAULT_CONFIG) -> ScalarEstimate:
    """``V_1 = 2 sum_i int a_i^2 / ((a_i^2 t^2 + 1) prod_j sqrt(a_j^2 t^2 + 1)) dt``."""
    c, w = _rescaled(E)
    vals, errs, ok = elliptic_integrals(w, 1, 1.0, cfg)
    v = 2.0 * math.fsum(w * vals)
    err = 2.0 * math.fsum(w * errs) + _rounding_floor(E.dim, v)
    return ScalarEstimate(c * v, c * err, converged=bool(ok.all()))


def v2_specialized(E: Ellipsoid, cfg: QuadratureConfig = DEFAULT_CONFIG) -> ScalarEstimate:
    """``V_2 = pi sum a_i^2 - pi sum_i int a_i^4 t / ((a_i^2 t^2 + 1) prod sqrt(..)) dt``."""
    if E.dim < 2:
        raise ValueError("V_2 needs d >= 2")
    c, w = _rescaled(E)
    vals, errs, ok = elliptic_integrals(w, 2, 1.0, cfg)
    pos = math.pi * math.fsum(w)
    neg = math.pi * math.fsum(w**2 * vals)
    v = pos - neg
    err = math.pi * math.fsum(w**2 * errs) + 8 * E.dim * _EPS * (pos + neg)
    return ScalarEstimate(c**2 * v, c**2 * err, converged=bool(ok.all()))


def vdm1_specialized(E: Ellipsoid, cfg: QuadratureConfig = DEFAULT_CONFIG) -> ScalarEstimate:
    """``V_{d-1} = kappa_{d-1} prod a_j^2 sum_i int dt / ((t^2 + a_i^2) prod_j sqrt(t^2 + a_j^2))``."""
    d = E.dim
    c, w = _rescaled(E)
    vals, errs, ok = _integrals_t2_plus(w, 1.0, cfg)
    pre = unit_ball_volume(d - 1) * math.prod(w)
    v = pre * math.fsum(vals)
    err = pre * math.fsum(errs) + _rounding_floor(d, v)
    f = c ** (d - 1)
    return ScalarEstimate(f * v, f * err, converged=bool(ok.all()))


def vdm2_specialized(E: Ellipsoid, cfg: QuadratureConfig = DEFAULT_CONFIG) -> ScalarEstimate:
    """``V_{d-2} = kappa_{d-2} prod a_j sum a_i^-2 - kappa_{d-2} prod a_j^2 sum_i int a_i^-2 t / ((t^2 + a_i^2) prod sqrt(t^2 + a_j^2)) dt``."""
    d = E.dim
    if d < 2:
        raise ValueError("V_{d-2} needs d >= 2")
    c, w = _rescaled(E)
    vals, errs, ok = _integrals_t2_plus(w, 2.0, cfg)
    kap = unit_ball_volume(d - 2)
    pos = kap * math.prod(np.sqrt(w)) * math.fsum(1.0 / w)
    pw = kap * math.prod(w)
    neg = pw * math.fsum(vals / w)
    v = pos - neg
    err = pw * math.fsum(errs / w) + 8 * (d + 1) * _EPS * (pos + neg)
    f = c ** (d - 2)
    return ScalarEstimate(f * v, f * err, converged=bool(ok.all()))


# -- reports -------------------------------------------------------------------


def default_backend(d: int, k: int) -> Backend:
    if k == 0 or k == d:
        return "closed_form"
    if k <= math.ceil(d / 2):
        return "quadrature"
    return "duality"


def intrinsic_volume(
    E: Ellipsoid,
    k: int,
    backend: Backend | None = None,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> ScalarEstimate:
    """``V_k(E)`` by the named backend (default: closed form, then quadrature or duality)."""
    k = _check_k(E, k, lo=0)
    d = E.dim
    backend = backend or default_backend(d, k)
    if backend == "closed_form" or k == 0:
        return vk_closed_form(E, k)
    if backend == "quadrature":
        return vk_quadrature(E, k, cfg)
    if backend == "duality":
        return vk_duality(E, k, cfg)
    if backend == "rfunction":
        return vk_rfunction(E, k, cfg)
    raise ValueError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class IntrinsicEntry:
    k: int
    value: float
    backend: str
    estimate: ScalarEstimate


@dataclass(frozen=True)
class IntrinsicVolumeReport:
    dimension: int
    entries: tuple[IntrinsicEntry, ...]
    warnings: tuple[str, ...] = field(default=())

    @property
    def values(self) -> np.ndarray:
        return np.array([e.value for e in self.entries])

    def __getitem__(self, k: int) -> IntrinsicEntry:
        return self.entries[k]


def intrinsic_volumes(
    E: Ellipsoid,
    backend: Backend | None = None,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> IntrinsicVolumeReport:
    """All of ``V_0 .. V_d``.

    With an explicit ``backend`` the endpoints ``k = 0`` and ``k = d`` still
    come from their closed forms.
    """
    d = E.dim
    warnings = []
    ratio = float(E.a.max() / E.a.min())
    if ratio > ECCENTRICITY_WARN:
        warnings.append(
            f"semiaxis ratio {ratio:.3g} exceeds {ECCENTRICITY_WARN:.0e}; "
            "quadrature accuracy may degrade"
        )
    entries = []
    for k in range(d + 1):
        b = default_backend(d, k) if backend is None or k in (0, d) else backend
        est = intrinsic_volume(E, k, b, cfg)
        if not est.converged:
            warnings.append(f"V_{k}: quadrature did not reach rel_tol={cfg.rel_tol:g}")
        entries.append(IntrinsicEntry(k, est.value, b, est))
    return IntrinsicVolumeReport(d, tuple(entries), tuple(warnings))


def steiner_volume(
    E: Ellipsoid, r: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> ScalarEstimate:
    """Volume of the parallel body ``E + r B^d`` from the Steiner polynomial."""
    if not r >= 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    d = E.dim
    if r == 0:
        return vk_closed_form(E, d)
    terms, errs = [], []
    for k in range(d + 1):
        est = intrinsic_volume(E, k, cfg=cfg)
        w = unit_ball_volume(d - k) * r ** (d - k)
        terms.append(w * est.value)
        errs.append(w * est.error)
    return ScalarEstimate(math.fsum(terms), math.fsum(errs))


def quermassintegral(
    E: Ellipsoid, j: int, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> ScalarEstimate:
    """``W_j = kappa_j V_{d-j} / C(d, d-j)``."""
    d = E.dim
    if int(j) != j or not 0 <= j <= d:
        raise ValueError(f"j must be an integer in [0, {d}]")
    k = d - j
    est = intrinsic_volume(E, k, cfg=cfg)
    return est.scaled(unit_ball_volume(j) / math.comb(d, k))
