"""Multi-index combinatorics.

Multi-indices are plain tuples of non-negative ints. The canonical ordering
is graded lexicographic: by total degree first, then lexicographically
descending in the leading components, so that ``(1, 0)`` precedes ``(0, 1)``.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence, Tuple

MultiIndex = Tuple[int, ...]

# Integer width the artifact promises not to exceed when handing counts to
# fixed-width consumers (numpy int64, float conversion).
INT64_MAX = 2**63 - 1


def as_multiindex(alpha: Sequence[int]) -> MultiIndex:
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise ValueError(f"multi-index components must be non-negative: {alpha}")
    return alpha


def degree(alpha: Sequence[int]) -> int:
    return sum(alpha)


def _check_same_dim(alpha, beta):
    if len(alpha) != len(beta):
        raise ValueError(f"dimension mismatch: {alpha} vs {beta}")


@lru_cache(maxsize=None)
def _level(n: int, k: int) -> Tuple[MultiIndex, ...]:
    # all alpha with |alpha| = k, in descending-lex order
    if n == 1:
        return ((k,),)
    out = []
    for first in range(k, -1, -1):
        for rest in _level(n - 1, k - first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_level(n: int, k: int) -> Tuple[MultiIndex, ...]:
    """All multi-indices of dimension n and total degree exactly k."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if k < 0:
        return ()
    return _level(n, k)


@lru_cache(maxsize=None)
def enumerate_up_to(n: int, N: int) -> Tuple[MultiIndex, ...]:
    """All multi-indices with |alpha| <= N in graded lexicographic order.

    >>> enumerate_up_to(2, 1)
    ((0, 0), (1, 0), (0, 1))
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if N < 0:
        raise ValueError("maximal degree must be >= 0")
    out = []
    for k in range(N + 1):
        out.extend(_level(n, k))
    return tuple(out)


@lru_cache(maxsize=None)
def index_map(n: int, N: int) -> dict:
    """Position of each multi-index inside ``enumerate_up_to(n, N)``."""
    return {alpha: i for i, alpha in enumerate(enumerate_up_to(n, N))}


def count_up_to(n: int, N: int) -> int:
    return math.comb(n + N, n)


def grlex_key(alpha: Sequence[int]):
    return (sum(alpha),) + tuple(-a for a in alpha)


def multi_factorial(alpha: Sequence[int]) -> int:
    """alpha! = prod_j alpha_j!  (exact Python integer)."""
    out = 1
    for a in alpha:
        if a < 0:
            raise ValueError(f"negative component in {tuple(alpha)}")
        out *= math.factorial(a)
    return out


def falling_product(beta: Sequence[int], alpha: Sequence[int]) -> int:
    """prod_j beta_j (beta_j - 1) ... (beta_j - alpha_j + 1); zero unless alpha <= beta."""
    _check_same_dim(alpha, beta)
    out = 1
    for b, a in zip(beta, alpha):
        if a > b:
            return 0
        out *= math.perm(b, a)
    return out


def leq(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """Componentwise order alpha <= beta."""
    _check_same_dim(alpha, beta)
    return all(a <= b for a, b in zip(alpha, beta))


def add(alpha: Sequence[int], beta: Sequence[int]) -> MultiIndex:
    _check_same_dim(alpha, beta)
    return tuple(a + b for a, b in zip(alpha, beta))


def sub(beta: Sequence[int], alpha: Sequence[int]) -> MultiIndex:
    """beta - alpha; raises if the result would have a negative component."""
    _check_same_dim(alpha, beta)
    out = tuple(b - a for a, b in zip(alpha, beta))
    if any(c < 0 for c in out):
        raise ValueError(f"{tuple(alpha)} is not <= {tuple(beta)}")
    return out


def unit(n: int, j: int) -> MultiIndex:
    """The multi-index e_j (0-based axis j)."""
    if not 0 <= j < n:
        raise ValueError(f"axis {j} out of range for dimension {n}")
    return tuple(1 if i == j else 0 for i in range(n))


def to_int64(value: int) -> int:
    """Pass an exact count through the declared 64-bit width, refusing to wrap."""
    if abs(value) > INT64_MAX:
        raise OverflowError(f"integer {value} exceeds the 64-bit range")
    return value
