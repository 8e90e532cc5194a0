"""Elementary symmetric polynomials, full and leave-one-out.

All evaluation uses the one-pass product expansion of ``prod(1 + t_j x)``;
for nonnegative inputs no subtraction ever happens.  Leave-one-out values
are obtained by re-running the expansion without the excluded entry rather
than by downdating, which cancels badly when the excluded entry dominates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

__all__ = ["elementary_all", "leave_one_out", "leave_one_out_all", "SymmetricTable"]


def elementary_all(values: ArrayLike, max_m: int | None = None) -> NDArray[np.float64]:
    """Return ``e_0, ..., e_max_m`` of ``values``.

    >>> elementary_all([1, 2, 3]).tolist()
    [1.0, 6.0, 11.0, 6.0]
    """
    t = np.asarray(values, dtype=float).ravel()
    n = t.size
    if max_m is None:
        max_m = n
    if not 0 <= max_m <= n:
        raise ValueError(f"max_m must lie in [0, {n}], got {max_m}")
    e = np.zeros(max_m + 1)
    e[0] = 1.0
    for j, tj in enumerate(t):
        top = min(j + 1, max_m)
        # descending in m so e[m-1] still holds the previous stage
        e[1 : top + 1] += tj * e[0:top]
    return e


def leave_one_out(values: ArrayLike, m: int, i: int) -> float:
    """``s_m`` of ``values`` with entry ``i`` removed."""
    t = np.asarray(values, dtype=float).ravel()
    n = t.size
    if not 0 <= i < n:
        raise IndexError(f"index {i} out of range for {n} values")
    if not 0 <= m <= n - 1:
        raise ValueError(f"m must lie in [0, {n - 1}], got {m}")
    return float(elementary_all(np.delete(t, i), m)[m])


def leave_one_out_all(values: ArrayLike, m: int) -> NDArray[np.float64]:
    """Vector of ``s_m`` with each entry removed in turn."""
    t = np.asarray(values, dtype=float).ravel()
    n = t.size
    if not 0 <= m <= n - 1:
        raise ValueError(f"m must lie in [0, {n - 1}], got {m}")
    return np.array([elementary_all(np.delete(t, i), m)[m] for i in range(n)])


@dataclass(frozen=True)
class SymmetricTable:
    """Full and leave-one-out elementary symmetric values of one input tuple.

    ``loo[i, m]`` is ``s_m`` of the inputs with index ``i`` removed.
    """

    values: NDArray[np.float64]
    full: NDArray[np.float64] = field(repr=False)
    loo: NDArray[np.float64] = field(repr=False)

    @classmethod
    def build(cls, values: Sequence[float] | NDArray, max_m: int | None = None) -> "SymmetricTable":
        t = np.asarray(values, dtype=float).ravel().copy()
        n = t.size
        if max_m is None:
            max_m = max(n - 1, 0)
        if not 0 <= max_m <= max(n - 1, 0):
            raise ValueError(f"max_m must lie in [0, {max(n - 1, 0)}], got {max_m}")
        full = elementary_all(t)
        loo = np.array([elementary_all(np.delete(t, i), max_m) for i in range(n)])
        t.setflags(write=False)
        full.setflags(write=False)
        loo.setflags(write=False)
        return cls(t, full, loo.reshape(n, max_m + 1))
