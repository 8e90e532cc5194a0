import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellipvol.sympoly import SymmetricTable, elementary_all, leave_one_out, leave_one_out_all

# subnormals are excluded: their products are not representable to relative accuracy
nonneg = st.one_of(st.just(0.0), st.floats(min_value=1e-100, max_value=1e3))


def brute(values, m):
    return math.fsum(math.prod(c) for c in itertools.combinations(values, m))


def test_elementary_examples():
    assert elementary_all([1, 2, 3], 3).tolist() == [1, 6, 11, 6]
    assert elementary_all([], 0).tolist() == [1]
    c, n = 1.7, 6
    e = elementary_all([c] * n)
    for m in range(n + 1):
        assert e[m] == pytest.approx(math.comb(n, m) * c**m, rel=1e-14)


def test_elementary_rejects_large_m():
    with pytest.raises(ValueError):
        elementary_all([1, 2], 3)


def test_leave_one_out_examples():
    assert leave_one_out([1, 2, 3], 1, 0) == 5
    assert leave_one_out([4, 9], 0, 1) == 1
    assert leave_one_out([1, 1, 1, 1], 2, 2) == 3


def test_leave_one_out_errors():
    with pytest.raises(IndexError):
        leave_one_out([1, 2], 0, 2)
    with pytest.raises(ValueError):
        leave_one_out([1, 2], 2, 0)


@given(st.lists(nonneg, min_size=0, max_size=8))
def test_matches_enumeration(values):
    e = elementary_all(values)
    for m in range(len(values) + 1):
        assert e[m] == pytest.approx(brute(values, m), rel=1e-13, abs=1e-300)


@given(st.lists(nonneg, min_size=1, max_size=8))
def test_downdating_identity(values):
    t = SymmetricTable.build(values)
    n = len(values)
    for i in range(n):
        assert t.loo[i, 0] == 1.0
        for m in range(1, n):
            rhs = t.loo[i, m] + values[i] * t.loo[i, m - 1]
            assert t.full[m] == pytest.approx(rhs, rel=1e-12, abs=1e-300)


@given(st.lists(nonneg, min_size=1, max_size=8), st.randoms())
def test_permutation_invariance(values, rnd):
    perm = values[:]
    rnd.shuffle(perm)
    assert np.allclose(elementary_all(values), elementary_all(perm), rtol=1e-13, atol=0)


@given(st.lists(st.floats(0.0, 100.0), min_size=1, max_size=8), st.floats(0.01, 100.0))
def test_scaling(values, c):
    e = elementary_all(values)
    ec = elementary_all([c * v for v in values])
    for m, (x, y) in enumerate(zip(e, ec)):
        assert y == pytest.approx(c**m * x, rel=1e-12, abs=1e-300)


def test_leave_one_out_no_cancellation_with_dominant_entry():
    # the subtraction recurrence loses everything here; direct evaluation does not
    values = [1e16, 1.0, 2.0, 3.0]
    assert leave_one_out(values, 2, 0) == 11.0
    assert leave_one_out_all(values, 3)[0] == 6.0


def test_table_is_immutable_and_nonnegative():
    t = SymmetricTable.build([0.5, 2.0, 3.0])
    assert np.all(t.loo >= 0) and np.all(t.full >= 0)
    assert t.full[0] == 1.0
    with pytest.raises(ValueError):
        t.loo[0, 0] = 5.0
