"""Exact scalars for the coefficient calculus.

The ladder formulas only ever multiply coefficients by square roots of
integers, and the Bessel potentials of integer order by square roots of
rationals. ``Surd`` represents finite sums

    sum_r  (p_r + i q_r) * sqrt(r),     r square-free, p_r, q_r rational,

which form a field closed under everything the exact code paths need.
Equality is structural on a canonical form, so identities such as
``sqrt(3) * sqrt(3) == 3`` hold exactly.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

_ZERO = Fraction(0)


@lru_cache(maxsize=4096)
def _split_square(n: int):
    """n = s**2 * r with r square-free; returns (s, r)."""
    if n <= 0:
        raise ValueError("square-free split needs a positive integer")
    s, r, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            r *= p
        p += 1
    return s, r * n


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class Surd:
    """Element of Q(i, sqrt 2, sqrt 3, sqrt 5, ...), stored canonically."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for r, (re, im) in terms.items():
                if re or im:
                    clean[r] = (Fraction(re), Fraction(im))
        self._terms = clean
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def rational(cls, value, imag=0) -> "Surd":
        return cls({1: (_as_fraction(value), _as_fraction(imag))})

    @classmethod
    def sqrt(cls, value) -> "Surd":
        """Exact square root of a non-negative rational."""
        q = _as_fraction(value)
        if q < 0:
            raise ValueError("sqrt of a negative rational")
        if q == 0:
            return cls()
        # sqrt(p/d) = sqrt(p*d) / d
        s, r = _split_square(q.numerator * q.denominator)
        return cls({r: (Fraction(s, q.denominator), _ZERO)})

    @classmethod
    def coerce(cls, value) -> "Surd":
        if isinstance(value, Surd):
            return value
        if isinstance(value, (int, Fraction, Rational)) and not isinstance(value, bool):
            return cls.rational(value)
        if isinstance(value, bool):
            return cls.rational(int(value))
        raise TypeError(
            f"exact coefficients must be int, Fraction or Surd, got {type(value).__name__}"
        )

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for r, (re, im) in other._terms.items():
            a, b = terms.get(r, (_ZERO, _ZERO))
            terms[r] = (a + re, b + im)
        return Surd(terms)

    __radd__ = __add__

    def __neg__(self):
        return Surd({r: (-re, -im) for r, (re, im) in self._terms.items()})

    def __sub__(self, other):
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Surd.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        terms = {}
        for r1, (a1, b1) in self._terms.items():
            for r2, (a2, b2) in other._terms.items():
                g = math.gcd(r1, r2)
                r = (r1 // g) * (r2 // g)
                re = (a1 * a2 - b1 * b2) * g
                im = (a1 * b2 + b1 * a2) * g
                a, b = terms.get(r, (_ZERO, _ZERO))
                terms[r] = (a + re, b + im)
        return Surd(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Surd.coerce(other)
        if not other._terms:
            raise ZeroDivisionError("division by an exact zero")
        if len(other._terms) != 1:
            raise ValueError("division by a multi-radical surd is not supported")
        (r, (a, b)), = other._terms.items()
        # 1 / ((a + ib) sqrt r) = (a - ib) sqrt r / ((a^2 + b^2) r)
        den = (a * a + b * b) * r
        return self * Surd({r: (a / den, -b / den)})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = Surd.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Surd":
        return Surd({r: (re, -im) for r, (re, im) in self._terms.items()})

    def abs2(self) -> "Surd":
        return self * self.conjugate()

    # inspection -------------------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return set(self._terms) <= {1} and all(im == 0 for _, im in self._terms.values())

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._terms.get(1, (_ZERO, _ZERO))[0]

    def __complex__(self):
        re = sum(float(a) * math.sqrt(r) for r, (a, _) in self._terms.items())
        im = sum(float(b) * math.sqrt(r) for r, (_, b) in self._terms.items())
        return complex(re, im)

    def __float__(self):
        z = complex(self)
        if any(b for _, b in self._terms.values()):
            raise TypeError("surd has a non-zero imaginary part")
        return z.real

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return "Surd(0)"
        parts = []
        for r in sorted(self._terms):
            re, im = self._terms[r]
            c = f"{re}" if not im else f"({re}{'+' if im >= 0 else '-'}{abs(im)}i)"
            parts.append(c if r == 1 else f"{c}*sqrt({r})")
        return "Surd(" + " + ".join(parts) + ")"


I = Surd.rational(0, 1)


def exact_sqrt(k) -> Surd:
    return Surd.sqrt(k)
