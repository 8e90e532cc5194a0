"""Sharded, seed-deterministic Monte Carlo driver."""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np

from .core import ScalarEstimate

log = logging.getLogger(__name__)

CHUNK = 65536

SampleFn = Callable[[np.random.Generator, int], np.ndarray]


def run(sample: SampleFn, n_samples: int, seed: int, threads: int | None = None) -> ScalarEstimate:
    """Mean and standard error of ``n_samples`` draws of ``sample``.

    Work is cut into fixed-size chunks, each with its own child stream of
    ``SeedSequence(seed)``.  Chunks are concatenated in index order, so the
    result depends on ``(seed, n_samples)`` only, never on ``threads``.
    """
    if n_samples < 2:
        raise ValueError(f"need at least 2 samples, got {n_samples}")
    sizes = [CHUNK] * (n_samples // CHUNK)
    if n_samples % CHUNK:
        sizes.append(n_samples % CHUNK)
    children = np.random.SeedSequence(seed).spawn(len(sizes))

    def work(idx: int) -> np.ndarray:
        return sample(np.random.default_rng(children[idx]), sizes[idx])

    threads = threads or os.cpu_count() or 1
    if threads == 1 or len(sizes) == 1:
        parts = [work(i) for i in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, range(len(sizes))))
    return ScalarEstimate.from_samples(np.concatenate(parts))


def uniform_sphere(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    """``n`` points uniform on the unit sphere in R^d (normalised Gaussians)."""
    g = rng.standard_normal((n, d))
    norm = np.linalg.norm(g, axis=1, keepdims=True)
    # a zero Gaussian vector has probability 0; redraw rather than divide by 0
    while np.any(norm == 0):
        bad = norm[:, 0] == 0
        g[bad] = rng.standard_normal((int(bad.sum()), d))
        norm = np.linalg.norm(g, axis=1, keepdims=True)
    return g / norm


def uniform_ball(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    """``n`` points uniform in the unit ball: sphere direction times ``U**(1/d)``."""
    u = uniform_sphere(rng, n, d)
    r = rng.random(n) ** (1.0 / d)
    return u * r[:, None]


def sqrt_gram_det(M: np.ndarray) -> np.ndarray:
    """``sqrt(det(M M^T))`` for a batch of ``(k, d)`` matrices.

    Cholesky first; if any factorisation in the batch fails, fall back to the
    eigenvalue product with negative round-off clamped at zero.
    """
    G = M @ np.swapaxes(M, -1, -2)
    try:
        L = np.linalg.cholesky(G)
        return np.prod(np.diagonal(L, axis1=-2, axis2=-1), axis=-1)
    except np.linalg.LinAlgError:
        ev = np.linalg.eigvalsh(G)
        neg = ev < 0
        if np.any(neg):
            scale = float(np.max(np.abs(ev)))
            log.debug(
                "clamped %d negative Gram eigenvalues (min %.3g, scale %.3g)",
                int(neg.sum()), float(ev.min()), scale,
            )
        return np.sqrt(np.prod(np.clip(ev, 0.0, None), axis=-1))


def simplex_volumes(points: np.ndarray) -> np.ndarray:
    """k-volumes of simplices given as ``(n, k+1, d)`` vertex arrays."""
    k = points.shape[1] - 1
    edges = points[:, 1:, :] - points[:, :1, :]
    return sqrt_gram_det(edges) / math.factorial(k)
