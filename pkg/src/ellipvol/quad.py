"""Semi-infinite double-exponential quadrature for the ellipsoid integrals.

The integration variable ``t`` on ``[0, inf)`` is mapped to ``u = t/(1+t)``
on ``(0, 1)`` and integrated with tanh-sinh.  Composing the two maps gives
``t = exp(pi * sinh(s))`` exactly, which is how the nodes are generated:
nothing is ever formed as ``1 - u``, and integrands are supplied as
``log f`` evaluated at ``y = log t`` so that products like
``prod(a_j**2 t**2 + 1)`` cannot overflow for any ``t`` or dimension.

The mesh width is halved level by level (re-using previous nodes) until two
successive levels agree to ``rel_tol``.  The reported error is that
difference plus a floating-point summation floor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .core import Ellipsoid, ScalarEstimate, log_beta, log_gamma

__all__ = [
    "QuadratureConfig",
    "EllipticIntegrandSpec",
    "semi_infinite",
    "elliptic_integral",
    "elliptic_integrals",
    "carlson_R",
    "prop3_coefficient",
    "prop3_rhs",
    "check_prop3_domain",
]

_EPS = np.finfo(float).eps
_H0 = 0.5
_S_PROBE = 12.0
# terms below exp(-_LOG_CUT) times the largest one are dropped from the window
_LOG_CUT = 60.0


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-300
    max_levels: int = 12

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if not self.abs_tol >= 0:
            raise ValueError("abs_tol must be nonnegative")
        if self.max_levels < 1:
            raise ValueError("max_levels must be at least 1")


DEFAULT_CONFIG = QuadratureConfig()


def _log_weighted(log_f, s):
    # log of f(t) * dt/ds with t = exp(pi sinh s)
    y = math.pi * np.sinh(s)
    return log_f(y) + y + np.log(math.pi * np.cosh(s))


def _window(log_f) -> tuple[float, float]:
    s = np.arange(-_S_PROBE, _S_PROBE + _H0 / 2, _H0)
    with np.errstate(over="ignore", invalid="ignore"):
        lg = np.atleast_2d(_log_weighted(log_f, s))
    lg = np.where(np.isnan(lg), -np.inf, lg)
    peak = lg.max(axis=-1, keepdims=True)
    if not np.all(np.isfinite(peak)):
        raise FloatingPointError("integrand is not finite on the probe grid")
    keep = np.any(lg > peak - _LOG_CUT, axis=0)
    idx = np.flatnonzero(keep)
    lo = max(idx[0] - 1, 0)
    hi = min(idx[-1] + 1, s.size - 1)
    return float(s[lo]), float(s[hi])


def semi_infinite(
    log_f: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.bool_]]:
    """Integrate ``f`` over ``(0, inf)`` given ``log f`` as a function of ``log t``.

    ``log_f`` receives a 1-D array ``y`` and returns either an array of the
    same shape or a 2-D array ``(m, len(y))`` for a batch of ``m``
    integrands sharing the nodes.

    Returns
    -------
    values, errors, converged : ndarray, shape (m,)
    """
    s_lo, s_hi = _window(log_f)

    def level_sum(s):
        if s.size == 0:
            return 0.0
        with np.errstate(over="ignore", under="ignore"):
            g = np.exp(np.atleast_2d(_log_weighted(log_f, s)))
        return g.sum(axis=-1)

    h = _H0
    base = np.arange(math.ceil(s_lo / h), math.floor(s_hi / h) + 1) * h
    total = level_sum(base)
    prev = h * total
    values = prev
    diff = np.full_like(prev, np.inf)
    converged = np.zeros(prev.shape, dtype=bool)
    for level in range(1, cfg.max_levels + 1):
        h *= 0.5
        j0 = math.ceil((s_lo / h - 1) / 2)
        j1 = math.floor((s_hi / h - 1) / 2)
        new = (2 * np.arange(j0, j1 + 1) + 1) * h
        total = total + level_sum(new)
        values = h * total
        diff = np.abs(values - prev)
        prev = values
        converged = diff <= np.maximum(cfg.rel_tol * np.abs(values), cfg.abs_tol)
        if level >= 2 and np.all(converged):
            break
    errors = diff + 16 * _EPS * np.abs(values)
    return values, errors, converged


# -- the ellipsoid integrand ------------------------------------------------


@dataclass(frozen=True)
class EllipticIntegrandSpec:
    """``t**(power-1) / ((z_i t^2 + 1)**special_exponent * prod_j sqrt(z_j t^2 + 1))``.

    ``squared_semiaxes`` are the ``z_j = a_j**2``; ``special_index`` is
    0-based.  The default exponent 1 is the intrinsic-volume integrand;
    a general ``alpha`` corresponds to ``special_exponent = alpha/2``.
    """

    squared_semiaxes: tuple[float, ...]
    power: float
    special_index: int
    special_exponent: float = 1.0

    def __post_init__(self):
        z = tuple(float(v) for v in self.squared_semiaxes)
        object.__setattr__(self, "squared_semiaxes", z)
        d = len(z)
        if d < 1 or any(not (math.isfinite(v) and v > 0) for v in z):
            raise ValueError("squared semiaxes must be positive and finite")
        if not 0 <= self.special_index < d:
            raise IndexError(f"special_index {self.special_index} out of range for d={d}")
        if not self.power > 0:
            raise ValueError("power must be positive")
        # decay at infinity is t**(power - 1 - 2*special_exponent - d)
        if not self.power < 2 * self.special_exponent + d:
            raise ValueError("integral diverges at infinity for these exponents")


def _log1p_sq(log_z: NDArray, y: NDArray) -> NDArray:
    # log(1 + z t^2) for t = exp(y), shape (len(z), len(y))
    return np.logaddexp(0.0, log_z[:, None] + 2.0 * y[None, :])


def elliptic_integrals(
    z: ArrayLike,
    power: float,
    special_exponent: float = 1.0,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.bool_]]:
    """All ``d`` elliptic integrals, one per choice of the special index.

    Shares the nodes between the ``d`` integrands; returns
    ``(values, errors, converged)`` indexed by the special index.
    """
    z = np.asarray(z, dtype=float).ravel()
    log_z = np.log(z)

    def log_f(y):
        L = _log1p_sq(log_z, y)
        common = (power - 1.0) * y - 0.5 * L.sum(axis=0)
        return common[None, :] - special_exponent * L

    return semi_infinite(log_f, cfg)


def elliptic_integral(
    spec: EllipticIntegrandSpec, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> ScalarEstimate:
    """``int_0^inf t^(p-1) / ((z_i t^2+1)^c prod_j sqrt(z_j t^2+1)) dt``."""
    z = np.asarray(spec.squared_semiaxes)
    log_z = np.log(z)
    i = spec.special_index
    p = spec.power
    c = spec.special_exponent

    def log_f(y):
        L = _log1p_sq(log_z, y)
        return (p - 1.0) * y - 0.5 * L.sum(axis=0) - c * L[i]

    v, e, ok = semi_infinite(log_f, cfg)
    return ScalarEstimate(float(v[0]), float(e[0]), converged=bool(ok[0]))


# -- Carlson R ---------------------------------------------------------------


def carlson_R(
    s: float,
    b: Sequence[float],
    z: Sequence[float],
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> ScalarEstimate:
    """Beta-normalised hypergeometric R-function ``R_{-s}(b, z)`` for real ``z > 0``.

    ``R_{-s}(b, z) = B(s, sum(b) - s)**-1 * int_0^inf t^(s-1) / prod_j (1 + z_j t)^b_j dt``
    """
    b = np.asarray(b, dtype=float).ravel()
    z = np.asarray(z, dtype=float).ravel()
    if b.shape != z.shape or b.size == 0:
        raise ValueError("b and z must be non-empty and of equal length")
    if not np.all(np.isfinite(z)) or np.any(z <= 0):
        raise ValueError("z must be positive and finite")
    bsum = float(b.sum())
    if not 0 < s < bsum:
        raise ValueError(f"need 0 < s < sum(b) = {bsum}, got s = {s}")
    log_z = np.log(z)

    def log_f(y):
        L = np.logaddexp(0.0, log_z[:, None] + y[None, :])
        return (s - 1.0) * y - b @ L

    v, e, ok = semi_infinite(log_f, cfg)
    norm = math.exp(-log_beta(s, bsum - s))
    return ScalarEstimate(float(v[0]) * norm, float(e[0]) * norm, converged=bool(ok[0]))


# -- sphere-integral identity -------------------------------------------------


def check_prop3_domain(d: int, alpha: float, beta: float) -> None:
    """Raise unless both sides of the sphere/line identity converge.

    Needs ``beta > 0``, ``alpha > -1`` (so ``|u_i|**alpha`` is integrable on
    the sphere) and ``d + alpha - beta > 0`` (radial Gamma integral and the
    decay of the line integral at infinity).
    """
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    if not alpha > -1:
        raise ValueError(f"alpha must exceed -1, got {alpha}")
    if not d + alpha - beta > 0:
        raise ValueError(f"need d + alpha - beta > 0, got d={d}, alpha={alpha}, beta={beta}")


def prop3_coefficient(d: int, alpha: float, beta: float) -> float:
    check_prop3_domain(d, alpha, beta)
    return 4.0 * math.exp(
        0.5 * (d - 1) * math.log(math.pi)
        + log_gamma(0.5 * (alpha + 1))
        - log_gamma(0.5 * (d + alpha - beta))
        - log_gamma(0.5 * beta)
    )


def prop3_rhs(
    E: Ellipsoid,
    i: int,
    alpha: float,
    beta: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> ScalarEstimate:
    """Line-integral form of ``int_{S^{d-1}} |u_i|^alpha / h_E(u)^beta sigma(du)``.

    ``i`` is 0-based.
    """
    coef = prop3_coefficient(E.dim, alpha, beta)
    spec = EllipticIntegrandSpec(tuple(E.squared), beta, i, 0.5 * alpha)
    return elliptic_integral(spec, cfg).scaled(coef)
