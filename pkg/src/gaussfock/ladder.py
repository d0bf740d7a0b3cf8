"""Ladder calculus on coefficient vectors.

Axes are 0-based. On the Hermite side ``annihilate(j)`` is d/dx_j and
``create(j)`` is x_j - d/dx_j; on the Fock side they are d/dz_j and
multiplication by z_j. Everything here is exact in exact mode except the
Bessel potentials of non-integer order.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict

from . import multiindex as mi
from .basis import Basis, CoefficientVector, root
from .exact import Surd


def _check_axis(f: CoefficientVector, j: int):
    if not 0 <= j < f.dim:
        raise ValueError(f"axis {j} out of range for dimension {f.dim}")


def annihilate(j: int, f: CoefficientVector) -> CoefficientVector:
    """(A_j f)_b = sqrt(b_j + 1) f_{b + e_j}."""
    _check_axis(f, j)
    out = {}
    for beta, c in f.items():
        k = beta[j]
        if k == 0:
            continue
        lower = beta[:j] + (k - 1,) + beta[j + 1:]
        out[lower] = root(k, f.exact) * c
    return f.with_coeffs(out)


def create(j: int, f: CoefficientVector) -> CoefficientVector:
    """(A_j^* f)_b = sqrt(b_j) f_{b - e_j}."""
    _check_axis(f, j)
    out = {}
    for beta, c in f.items():
        k = beta[j] + 1
        upper = beta[:j] + (k,) + beta[j + 1:]
        out[upper] = root(k, f.exact) * c
    return f.with_coeffs(out)


def position(j: int, f: CoefficientVector) -> CoefficientVector:
    """Multiplication by x_j on a Hermite expansion."""
    if f.basis is not Basis.HERMITE:
        raise ValueError("position operator acts on Hermite-tagged vectors")
    return create(j, f) + annihilate(j, f)


def partial_alpha(alpha, f: CoefficientVector) -> CoefficientVector:
    """d^alpha f: coefficient moves from b + alpha to b with factor falling(b+alpha, alpha)^{1/2}."""
    alpha = mi.as_multiindex(alpha)
    if len(alpha) != f.dim:
        raise ValueError(f"multi-index {alpha} does not match dimension {f.dim}")
    out = {}
    for beta, c in f.items():
        fp = mi.falling_product(beta, alpha)
        if fp:
            out[mi.sub(beta, alpha)] = root(fp, f.exact) * c
    return f.with_coeffs(out)


# diagonal level operators ----------------------------------------------------

def level_scale(f: CoefficientVector, factor: Callable[[int], object]) -> CoefficientVector:
    """Multiply the coefficient at b by factor(|b|)."""
    return f.with_coeffs({b: factor(sum(b)) * c for b, c in f.items()})


def ou_apply(f: CoefficientVector) -> CoefficientVector:
    """Ornstein-Uhlenbeck operator, L h_b = -|b| h_b."""
    if f.basis is not Basis.HERMITE:
        raise ValueError("the Ornstein-Uhlenbeck operator acts on Hermite-tagged vectors")
    return level_scale(f, lambda k: -k)


def level_project(k: int, f: CoefficientVector) -> CoefficientVector:
    """J_k: keep the coefficients with |b| = k."""
    if k < 0:
        raise ValueError("level must be >= 0")
    return f.with_coeffs({b: c for b, c in f.items() if sum(b) == k})


def _power_factor(s, exact: bool):
    """k -> (1 + k)^{s/2}, exact when s is an integer and exact mode is on."""
    if exact:
        s_frac = Fraction(s)
        if s_frac.denominator == 1:
            e = int(s_frac)

            def factor(k, e=e):
                base = Surd.sqrt(1 + k) ** abs(e)
                return base if e >= 0 else Surd.rational(1) / base
            return factor
        raise ValueError("exact Bessel potentials need an integer order")
    return lambda k: (1.0 + k) ** (s / 2.0)


def bessel_potential(s, f: CoefficientVector) -> CoefficientVector:
    """(I - L)^{-s/2} f: level k scaled by (1 + k)^{-s/2}."""
    if s < 0:
        raise ValueError("Bessel order must be >= 0")
    if f.basis is not Basis.HERMITE:
        raise ValueError("Bessel potentials act on Hermite-tagged vectors")
    return level_scale(f, _power_factor(-s, f.exact))


def inverse_bessel(s, f: CoefficientVector) -> CoefficientVector:
    """(I - L)^{s/2} f on a finite expansion."""
    if s < 0:
        raise ValueError("Bessel order must be >= 0")
    if f.basis is not Basis.HERMITE:
        raise ValueError("Bessel potentials act on Hermite-tagged vectors")
    return level_scale(f, _power_factor(s, f.exact))


def resolvent(f: CoefficientVector) -> CoefficientVector:
    """(I - L)^{-1}, the order-2 Bessel potential."""
    return bessel_potential(2, f)


def lemma44_decompose(g: CoefficientVector, m: int) -> Dict[tuple, CoefficientVector]:
    """Functions g_alpha, |alpha| <= m, with sum_alpha d^alpha g_alpha = g.

    Built level by level: every g_b is rewritten through
    I - L = sum_j d_j (x_j - d_j) - (n - 1) I as

        g_b = sum_j d_j [create_j (I-L)^{-1} g_b] - (n - 1) (I-L)^{-1} g_b,

    which moves a piece of g_b to index b + e_j and keeps a remainder at b.
    """
    if m < 0:
        raise ValueError("order must be >= 0")
    if g.basis is not Basis.HERMITE:
        raise ValueError("decomposition acts on Hermite-tagged vectors")
    n = g.dim
    parts: Dict[tuple, CoefficientVector] = {(0,) * n: g}
    for _ in range(m):
        nxt: Dict[tuple, CoefficientVector] = {}

        def put(alpha, v):
            nxt[alpha] = nxt[alpha] + v if alpha in nxt else v

        for beta, g_beta in parts.items():
            r = resolvent(g_beta)
            for j in range(n):
                put(mi.add(beta, mi.unit(n, j)), create(j, r))
            if n > 1:
                put(beta, r * (-(n - 1)))
        parts = nxt
    return dict(sorted(parts.items(), key=lambda kv: mi.grlex_key(kv[0])))


def reconstruct(parts: Dict[tuple, CoefficientVector]) -> CoefficientVector:
    """sum_alpha d^alpha g_alpha."""
    it = iter(parts.items())
    alpha, v = next(it)
    total = partial_alpha(alpha, v)
    for alpha, v in it:
        total = total + partial_alpha(alpha, v)
    return total
