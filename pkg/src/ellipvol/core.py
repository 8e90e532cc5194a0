"""Ellipsoid domain types and the geometric primitives shared by every backend.

An ellipsoid is always axis-aligned and centred at the origin,
``{x : sum(x_i**2 / a_i**2) <= 1}``.  Only the semiaxes are stored; the
diagonal matrix ``diag(a)`` is never materialised.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

__all__ = [
    "Ellipsoid",
    "SpectrumPSD",
    "ScalarEstimate",
    "log_gamma",
    "log_unit_ball_volume",
    "unit_ball_volume",
    "sphere_area",
    "log_beta",
    "support_function",
    "polar",
    "distance_to_ellipsoid",
]


def _positive_tuple(values: Sequence[float], what: str) -> tuple[float, ...]:
    try:
        out = tuple(float(v) for v in values)
    except TypeError:
        raise TypeError(f"{what} must be a sequence of reals") from None
    if len(out) < 1:
        raise ValueError(f"{what} must contain at least one entry")
    for v in out:
        if not math.isfinite(v) or v <= 0.0:
            raise ValueError(f"non-positive or non-finite {what[:-1]} {v!r}")
    return out


@dataclass(frozen=True)
class Ellipsoid:
    """Solid ellipsoid with positive semiaxes (in any order).

    ``d = 1`` is accepted and means the segment ``[-a, a]``.
    """

    semiaxes: tuple[float, ...]

    def __init__(self, semiaxes: Sequence[float]):
        object.__setattr__(self, "semiaxes", _positive_tuple(semiaxes, "semiaxes"))

    @classmethod
    def ball(cls, d: int, r: float = 1.0) -> "Ellipsoid":
        return cls([r] * d)

    @property
    def dim(self) -> int:
        return len(self.semiaxes)

    @property
    def a(self) -> NDArray[np.float64]:
        return np.asarray(self.semiaxes, dtype=float)

    @property
    def squared(self) -> NDArray[np.float64]:
        return self.a**2

    def scaled(self, c: float) -> "Ellipsoid":
        return Ellipsoid([c * v for v in self.semiaxes])

    def volume(self) -> float:
        """Lebesgue volume ``kappa_d * prod(a)``."""
        d = self.dim
        return math.exp(log_unit_ball_volume(d) + float(np.sum(np.log(self.a))))

    def contains(self, x: ArrayLike, tol: float = 1e-12) -> NDArray[np.bool_]:
        x = np.asarray(x, dtype=float)
        return np.sum((x / self.a) ** 2, axis=-1) <= 1.0 + tol


@dataclass(frozen=True)
class SpectrumPSD:
    """Eigenvalues of a positive-definite covariance matrix."""

    eigenvalues: tuple[float, ...]

    def __init__(self, eigenvalues: Sequence[float]):
        object.__setattr__(
            self, "eigenvalues", _positive_tuple(eigenvalues, "eigenvalues")
        )

    @classmethod
    def from_covariance(cls, sigma: ArrayLike) -> "SpectrumPSD":
        """Spectrum of a symmetric positive-definite matrix."""
        sigma = np.asarray(sigma, dtype=float)
        if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
            raise ValueError("covariance must be a square matrix")
        if not np.allclose(sigma, sigma.T, rtol=1e-12, atol=0.0):
            raise ValueError("covariance must be symmetric")
        return cls(np.linalg.eigvalsh(sigma))

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    @property
    def lam(self) -> NDArray[np.float64]:
        return np.asarray(self.eigenvalues, dtype=float)


@dataclass(frozen=True)
class ScalarEstimate:
    """A number together with how far it can be trusted.

    ``error`` is an absolute error bound when ``error_kind`` is
    ``"deterministic"`` and a standard error when it is ``"statistical"``.
    """

    value: float
    error: float = 0.0
    error_kind: Literal["deterministic", "statistical"] = "deterministic"
    samples: int = 0
    converged: bool = True

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "error", float(self.error))
        object.__setattr__(self, "samples", int(self.samples))
        object.__setattr__(self, "converged", bool(self.converged))
        if not self.error >= 0.0:
            raise ValueError(f"error must be >= 0, got {self.error!r}")
        if self.error_kind not in ("deterministic", "statistical"):
            raise ValueError(f"unknown error kind {self.error_kind!r}")
        if (self.samples > 0) != (self.error_kind == "statistical"):
            raise ValueError("samples > 0 exactly when the error is statistical")

    @classmethod
    def from_samples(cls, x: NDArray[np.float64]) -> "ScalarEstimate":
        n = x.size
        if n < 2:
            raise ValueError("need at least two samples")
        mean = float(np.mean(x))
        se = float(np.std(x, ddof=1) / math.sqrt(n))
        return cls(mean, se, "statistical", n)

    def __float__(self) -> float:
        return self.value

    def scaled(self, c: float) -> "ScalarEstimate":
        return ScalarEstimate(
            c * self.value, abs(c) * self.error, self.error_kind, self.samples, self.converged
        )


# -- Gamma-family constants -------------------------------------------------


def log_gamma(x: float) -> float:
    """``log Gamma(x)`` for ``x > 0``."""
    if not x > 0.0:
        raise ValueError(f"log_gamma needs x > 0, got {x!r}")
    return math.lgamma(x)


def log_beta(p: float, q: float) -> float:
    return log_gamma(p) + log_gamma(q) - log_gamma(p + q)


def log_unit_ball_volume(k: int) -> float:
    if k < 0:
        raise ValueError(f"dimension must be >= 0, got {k}")
    return 0.5 * k * math.log(math.pi) - log_gamma(0.5 * k + 1.0)


def unit_ball_volume(k: int) -> float:
    """Volume ``kappa_k = pi**(k/2) / Gamma(k/2 + 1)`` of the unit k-ball.

    Evaluated in log space, so large ``k`` underflows smoothly to 0.
    """
    if int(k) != k:
        raise ValueError(f"dimension must be an integer, got {k!r}")
    k = int(k)
    if k == 0:
        return 1.0
    if k == 1:
        return 2.0
    if k == 2:
        return math.pi
    return math.exp(log_unit_ball_volume(k))


def sphere_area(d: int) -> float:
    """Surface measure of the unit sphere in R^d, ``2 pi^(d/2) / Gamma(d/2)``."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return math.exp(math.log(2.0) + 0.5 * d * math.log(math.pi) - log_gamma(0.5 * d))


# -- geometric primitives ---------------------------------------------------


def support_function(E: Ellipsoid, x: ArrayLike) -> float | NDArray[np.float64]:
    """``h_E(x) = sqrt(sum(a_i**2 * x_i**2))``; the last axis of ``x`` is the coordinate."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (E.dim,):
        raise ValueError(f"expected vectors of dimension {E.dim}, got shape {x.shape}")
    h = np.linalg.norm(x * E.a, axis=-1)
    return float(h) if h.ndim == 0 else h


def polar(E: Ellipsoid) -> Ellipsoid:
    return Ellipsoid([1.0 / v for v in E.semiaxes])


def distance_to_ellipsoid(E: Ellipsoid, x: ArrayLike) -> float | NDArray[np.float64]:
    """Euclidean distance from ``x`` to the solid ellipsoid (0 inside).

    Accepts a single point or an array of points along the last axis.  For
    exterior points the Lagrange multiplier ``mu > 0`` of the projection
    ``p_i = a_i**2 x_i / (a_i**2 + mu)`` is bracketed in ``[0, a_max |x|]``,
    bisected to 1e-14 relative width and then polished by two Newton steps.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (E.dim,):
        raise ValueError(f"expected vectors of dimension {E.dim}, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("point coordinates must be finite")
    scalar = x.ndim == 1
    pts = np.atleast_2d(x).reshape(-1, E.dim)
    a2 = E.squared
    dist = np.zeros(pts.shape[0])

    outside = np.sum((pts / E.a) ** 2, axis=-1) > 1.0 + 1e-12
    if np.any(outside):
        p = pts[outside]
        num = a2 * p**2
        lo = np.zeros(p.shape[0])
        hi = float(np.max(E.a)) * np.linalg.norm(p, axis=-1)
        # converged entries are frozen so each point's result is independent of the batch
        for _ in range(200):
            active = hi - lo > 1e-14 * hi
            if not np.any(active):
                break
            mid = 0.5 * (lo + hi)
            g = np.sum(num / (a2 + mid[:, None]) ** 2, axis=-1) - 1.0
            pos = g > 0.0
            lo = np.where(active & pos, mid, lo)
            hi = np.where(active & ~pos, mid, hi)
        mu = 0.5 * (lo + hi)
        for _ in range(2):
            den = a2 + mu[:, None]
            q = num / den**2
            g = np.sum(q, axis=-1) - 1.0
            dg = -2.0 * np.sum(q / den, axis=-1)
            step = np.where(dg < 0.0, g / dg, 0.0)
            mu = np.clip(mu - step, lo, hi)
        dist[outside] = np.linalg.norm(mu[:, None] * p / (a2 + mu[:, None]), axis=-1)

    if scalar:
        return float(dist[0])
    return dist.reshape(x.shape[:-1])
