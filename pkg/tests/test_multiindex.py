import itertools
import math

import pytest
from hypothesis import given, strategies as st

from gaussfock import multiindex as mi


def brute_force(n, N):
    return sorted((a for a in itertools.product(range(N + 1), repeat=n) if sum(a) <= N),
                  key=mi.grlex_key)


def test_enumerate_examples():
    assert mi.enumerate_up_to(1, 2) == ((0,), (1,), (2,))
    assert mi.enumerate_up_to(2, 1) == ((0, 0), (1, 0), (0, 1))
    assert len(mi.enumerate_up_to(3, 4)) == 35


@pytest.mark.parametrize("n,N", [(1, 6), (2, 5), (3, 4), (4, 3)])
def test_enumerate_matches_brute_force(n, N):
    got = mi.enumerate_up_to(n, N)
    assert list(got) == brute_force(n, N)
    assert len(got) == math.comb(n + N, n) == mi.count_up_to(n, N)
    assert len(set(got)) == len(got)
    assert [mi.degree(a) for a in got] == sorted(mi.degree(a) for a in got)


def test_index_map_is_inverse_of_enumeration():
    idx = mi.enumerate_up_to(3, 4)
    table = mi.index_map(3, 4)
    assert all(table[a] == k for k, a in enumerate(idx))


def test_level_is_a_slice():
    for k in range(5):
        assert all(mi.degree(a) == k for a in mi.enumerate_level(2, k))
        assert len(mi.enumerate_level(2, k)) == k + 1


def test_factorial_examples():
    assert mi.multi_factorial((2, 3)) == 12
    assert mi.multi_factorial((0, 0, 0)) == 1
    assert mi.multi_factorial((4,)) == 24


def test_falling_product_examples():
    assert mi.falling_product((3,), (2,)) == 6
    assert mi.falling_product((5, 2), (0, 0)) == 1
    assert mi.falling_product((1,), (2,)) == 0


small = st.lists(st.integers(0, 7), min_size=1, max_size=3)


@given(small, st.data())
def test_falling_product_is_factorial_ratio(beta, data):
    alpha = data.draw(st.lists(st.integers(0, 7), min_size=len(beta), max_size=len(beta)))
    fp = mi.falling_product(beta, alpha)
    if mi.leq(alpha, beta):
        assert fp * mi.multi_factorial(mi.sub(beta, alpha)) == mi.multi_factorial(beta)
        assert mi.add(mi.sub(beta, alpha), alpha) == tuple(beta)
    else:
        assert fp == 0


def test_invalid_inputs():
    with pytest.raises(ValueError):
        mi.as_multiindex((1, -1))
    with pytest.raises(ValueError):
        mi.enumerate_up_to(0, 2)
    with pytest.raises(ValueError):
        mi.falling_product((1, 2), (1,))
    with pytest.raises(ValueError):
        mi.sub((1,), (2,))


def test_overflow_is_reported_not_wrapped():
    big = mi.multi_factorial((30,))
    assert big == math.factorial(30)          # Python integers never wrap
    with pytest.raises(OverflowError):
        mi.to_int64(big)
    assert mi.to_int64(math.factorial(20)) == math.factorial(20)
