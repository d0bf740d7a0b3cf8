"""Norms on coefficient vectors and on evaluator bundles.

Sobolev-type norms follow the l1 convention: the norm of order m is the sum
over |alpha| <= m of the L^2 (or F^2) norms of d^alpha f. Squared seminorms
are available separately and are exact in exact mode.

The Gauss side differentiates through the Hermite ladder. The Fock side
differentiates monomials z^b directly, so the two routes share no code
below the coefficient map.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Dict, Mapping

import numpy as np

from . import multiindex as mi
from .basis import Basis, CoefficientVector, coeff_norm_sq
from .exact import Surd
from .ladder import level_project, partial_alpha
from .quadrature import QuadratureResidualError


def _sqrt(value) -> float:
    return math.sqrt(max(complex(value).real, 0.0))


def _require(f: CoefficientVector, basis: Basis):
    if f.basis is not basis:
        raise ValueError(f"expected a {basis.value}-tagged vector, got {f.basis.value}")


def gauss_seminorms_sq(f: CoefficientVector, m: int) -> Dict[tuple, object]:
    """{alpha: ||d^alpha f||^2_{L^2(gamma)}} for |alpha| <= m."""
    _require(f, Basis.HERMITE)
    return {alpha: coeff_norm_sq(partial_alpha(alpha, f))
            for alpha in mi.enumerate_up_to(f.dim, m)}


def gauss_sobolev_norm(f: CoefficientVector, m: int) -> float:
    """||f||_{W^{2,m}(gamma)} = sum_{|alpha|<=m} ||d^alpha f||_{L^2(gamma)}."""
    if m < 0:
        raise ValueError("order must be >= 0")
    return sum(_sqrt(v) for v in gauss_seminorms_sq(f, m).values())


def fock_seminorms_sq(f: CoefficientVector, m: int) -> Dict[tuple, object]:
    """{alpha: ||d^alpha f||^2_{F^2}} computed in monomial coordinates.

    With f = sum a_b z^b (a_b = c_b / sqrt(b!)), d^alpha z^b = b!/(b-alpha)! z^{b-alpha}
    and ||z^g||^2 = g!, so the seminorm is sum_b |a_b|^2 (b!/(b-alpha)!)^2 (b-alpha)!.
    """
    _require(f, Basis.FOCK)
    # |a_b|^2 = |c_b|^2 / b!; the integer factorials are combined exactly
    # before any conversion to float, so large degrees do not overflow
    out = {}
    for alpha in mi.enumerate_up_to(f.dim, m):
        total = Surd() if f.exact else 0.0
        for beta, c in f.items():
            if not mi.leq(alpha, beta):
                continue
            rest = mi.sub(beta, alpha)
            bfact = mi.multi_factorial(beta)
            ratio = bfact // mi.multi_factorial(rest)
            weight = Fraction(ratio * ratio * mi.multi_factorial(rest), bfact)
            if f.exact:
                total = total + c.abs2() * weight
            else:
                total += abs(c) ** 2 * float(weight)
        out[alpha] = total
    return out


def fock_sobolev_norm(f: CoefficientVector, m: int) -> float:
    """||f||_{F^{2,m}} = sum_{|alpha|<=m} ||d^alpha f||_{F^2}."""
    if m < 0:
        raise ValueError("order must be >= 0")
    return sum(_sqrt(v) for v in fock_seminorms_sq(f, m).values())


def multinomial_weights(n: int, m: int) -> Dict[tuple, int]:
    """|z|^{2m} = sum_{|k|=m} (m!/k!) prod_j |z_j|^{2 k_j}."""
    return {k: math.factorial(m) // mi.multi_factorial(k) for k in mi.enumerate_level(n, m)}


def weighted_fock_norm_sq(f: CoefficientVector, m: int):
    """|| |z|^m f ||^2_{F^2} from the moments ||z^k f||^2 = sum_b |c_b|^2 (b+k)!/b!."""
    _require(f, Basis.FOCK)
    if m < 0:
        raise ValueError("order must be >= 0")
    total = Surd() if f.exact else 0.0
    for k, mult in multinomial_weights(f.dim, m).items():
        for beta, c in f.items():
            moment = mult * mi.multi_factorial(mi.add(beta, k)) // mi.multi_factorial(beta)
            if f.exact:
                total = total + c.abs2() * moment
            else:
                total += abs(c) ** 2 * float(moment)
    return total


def weighted_fock_norm(f: CoefficientVector, m: int) -> float:
    return _sqrt(weighted_fock_norm_sq(f, m))


def bessel_norm_sq(f: CoefficientVector, s):
    """sum_k (1 + k)^s ||J_k f||^2."""
    _require(f, Basis.HERMITE)
    if s < 0:
        raise ValueError("Bessel order must be >= 0")
    levels = sorted({sum(b) for b in f.coeffs})
    if f.exact and Fraction(s).denominator == 1:
        total = Surd()
        for k in levels:
            total = total + coeff_norm_sq(level_project(k, f)) * (1 + k) ** int(s)
        return total
    return sum((1.0 + k) ** s * complex(coeff_norm_sq(level_project(k, f))).real
               for k in levels)


def bessel_norm(f: CoefficientVector, s) -> float:
    """||f||_{L^{2,s}(gamma)} = ||(I - L)^{s/2} f||_{L^2(gamma)}."""
    return _sqrt(bessel_norm_sq(f, s))


def hilbert_sobolev_weights(n: int, N: int, m: int) -> np.ndarray:
    """Diagonal of the Gram matrix of sum_{|alpha|<=m} <d^alpha f, d^alpha g> on the degree-N basis.

    Both bases are orthonormal and d^alpha shifts them, so the Gram matrix is
    diagonal with entries sum_{|alpha|<=m} falling(b, alpha).
    """
    alphas = mi.enumerate_up_to(n, m)
    return np.array([float(sum(mi.falling_product(b, a) for a in alphas))
                     for b in mi.enumerate_up_to(n, N)])


def classical_sobolev_norm_dx(derivs: Mapping[tuple, Callable], m: int, rule,
                              coarse_rule=None, tol: float | None = None):
    """sum_{|alpha|<=m} (int |d^alpha f|^2 dx)^{1/2} by a Lebesgue-measure rule.

    ``derivs`` maps each alpha with |alpha| <= m to a vectorised evaluator.
    When ``coarse_rule`` is given the difference between the two rules is
    returned as the residual, and compared against ``tol`` if set.
    Returns ``(value, residual)``; residual is ``nan`` without a coarse rule.
    """
    if rule.convention != "lebesgue":
        raise ValueError("classical Sobolev norms need a Lebesgue-measure rule")
    n = rule.dim

    def total(r):
        s = 0.0
        for alpha in mi.enumerate_up_to(n, m):
            if alpha not in derivs:
                raise KeyError(f"missing derivative evaluator for {alpha}")
            vals = np.asarray(derivs[alpha](r.nodes))
            s += math.sqrt(max(float(np.sum(r.weights * np.abs(vals) ** 2)), 0.0))
        return s

    value = total(rule)
    residual = float("nan")
    if coarse_rule is not None:
        residual = abs(value - total(coarse_rule))
        if tol is not None and residual > tol:
            raise QuadratureResidualError(
                f"Lebesgue quadrature residual {residual:.3g} exceeds {tol:.3g}")
    return value, residual
