"""Gauss-Bargmann and Bargmann transforms, bridging operators, Weyl translations.

Evaluators are vectorised: a real-side evaluator takes an array of shape
(k, n) and returns k values, a Fock-side evaluator the same on complex
points. Integral forms accept one point (1-d array) or many (rows).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gammaln

from . import multiindex as mi
from .basis import Basis, CoefficientVector
from .exact import I as EXACT_I
from .quadrature import QuadratureResidualError, QuadratureRule, complex_nodes

_CHUNK = 4096


def _points(p, n: int | None = None, dtype=complex):
    p = np.asarray(p, dtype=dtype)
    single = p.ndim <= 1
    p = np.atleast_2d(p.reshape(1, -1) if single else p)
    if n is not None and p.shape[1] != n:
        raise ValueError(f"points of dimension {p.shape[1]} for a {n}-d rule")
    return p, single


def _sum_kernel(values, weights, kernel_exponent, pts):
    """sum_i w_i v_i exp(K(pts_k, node_i)) in chunks over pts."""
    out = np.empty(pts.shape[0], dtype=complex)
    wv = weights * values
    for s in range(0, pts.shape[0], _CHUNK):
        out[s:s + _CHUNK] = np.exp(kernel_exponent(pts[s:s + _CHUNK])) @ wv
    return out


# ---------------------------------------------------------------------------
# Gauss-Bargmann transform

def gauss_bargmann_coeff(f: CoefficientVector) -> CoefficientVector:
    """G h_b = e_b: the same coefficients with the Fock tag."""
    if f.basis is not Basis.HERMITE:
        raise ValueError("G acts on Hermite-tagged vectors")
    return f.retag(Basis.FOCK)


def inverse_gauss_bargmann_coeff(g: CoefficientVector) -> CoefficientVector:
    if g.basis is not Basis.FOCK:
        raise ValueError("G^{-1} acts on Fock-tagged vectors")
    return g.retag(Basis.HERMITE)


def gauss_bargmann_integral(f: Callable, z, rule: QuadratureRule, shifted: bool = False):
    """G f(z) = int f(x) exp(x.z - z.z/2) d gamma(x).

    The kernel is e^{-(x - z)^2 / 2} up to the Gaussian density, so for an
    entire f of moderate growth moving the contour gives G f(z) = E[f(z + t)].
    ``shifted=True`` uses that form (f must accept complex points); it stays
    well conditioned when Im z is large, where the real-axis form cancels
    exponentially large terms.
    """
    if rule.convention != "gamma":
        raise ValueError("G needs a gamma rule")
    Z, single = _points(z, rule.dim)
    x = rule.nodes
    if shifted:
        out = np.empty(Z.shape[0], dtype=complex)
        step = max(1, _CHUNK * 16 // len(rule))
        for s in range(0, Z.shape[0], step):
            block = Z[s:s + step]
            pts = (block[:, None, :] + x[None, :, :]).reshape(-1, rule.dim)
            vals = np.asarray(f(pts), dtype=complex).reshape(len(block), len(rule))
            out[s:s + step] = vals @ rule.weights
        return out[0] if single else out
    vals = np.asarray(f(x), dtype=complex)
    out = _sum_kernel(vals, rule.weights,
                      lambda zz: zz @ x.T - 0.5 * np.sum(zz * zz, axis=1)[:, None], Z)
    return out[0] if single else out


def inverse_gauss_bargmann_integral(g: Callable, x, rule: QuadratureRule):
    """G^{-1} g(x) = int g(z) exp(x.conj(z) - conj(z).conj(z)/2) d lambda(z).

    Accepts a plain lambda rule or a :func:`conjugate_kernel_rule`, which
    already carries the e^{-conj(z)^2/2} factor in its weights. With a gamma
    rule the contour-moved form G^{-1} g(x) = E[g(x + i t)] is used (g entire
    of moderate growth); it is the backward heat flow matching the shifted
    form of :func:`gauss_bargmann_integral`.
    """
    if rule.convention == "gamma":
        X, single = _points(x, rule.dim, dtype=float)
        shifts = 1j * rule.nodes
        out = np.empty(X.shape[0], dtype=complex)
        step = max(1, _CHUNK * 16 // len(rule))
        for s in range(0, X.shape[0], step):
            block = X[s:s + step]
            pts = (block[:, None, :] + shifts[None, :, :]).reshape(-1, rule.dim)
            vals = np.asarray(g(pts), dtype=complex).reshape(len(block), len(rule))
            out[s:s + step] = vals @ rule.weights
        return out[0] if single else out
    if rule.convention not in ("lambda", "lambda-conj"):
        raise ValueError("G^{-1} needs a lambda or gamma rule")
    zn = complex_nodes(rule)
    X, single = _points(x, zn.shape[1], dtype=float)
    zb = np.conj(zn)
    vals = np.asarray(g(zn), dtype=complex)
    if rule.convention == "lambda":
        quad = -0.5 * np.sum(zb * zb, axis=1)
    else:
        quad = np.zeros(len(zb))
    out = _sum_kernel(vals, rule.weights, lambda xx: xx @ zb.T + quad[None, :], X)
    return out[0] if single else out


_B_NORM = (2.0 / math.pi) ** 0.25


def bargmann_integral(f: Callable, z, rule: QuadratureRule):
    """B f(z) = (2/pi)^{n/4} int f(x) exp(2 x.z - x.x - z.z/2) dx with a Lebesgue rule."""
    if rule.convention != "lebesgue":
        raise ValueError("B needs a Lebesgue-dressed rule")
    Z, single = _points(z, rule.dim)
    x = rule.nodes
    n = rule.dim
    vals = np.asarray(f(x), dtype=complex) * np.exp(-np.sum(x * x, axis=1))
    out = _B_NORM**n * _sum_kernel(
        vals, rule.weights, lambda zz: 2 * zz @ x.T - 0.5 * np.sum(zz * zz, axis=1)[:, None], Z)
    return out[0] if single else out


def dilate_half(f: Callable) -> Callable:
    """C_{1/2} f(x) = f(x / 2)."""
    return lambda x: f(np.asarray(x) / 2)


def gaussian_weight_mult(f: Callable, inverse: bool = False) -> Callable:
    """M f(x) = (pi/2)^{n/4} exp(|x|^2 / 4) f(x), or its inverse."""
    sign = -1.0 if inverse else 1.0

    def g(x):
        x = np.atleast_2d(x)
        n = x.shape[1]
        w = ((math.pi / 2) ** (n / 4) * np.exp(np.sum(x * x, axis=1) / 4)) ** sign
        return w * np.asarray(f(x))
    return g


def verify_prop22(f: Callable, Z, gamma: QuadratureRule, dx: QuadratureRule) -> float:
    """max_z |B f(z) - G M C_{1/2} f(z)|."""
    lhs = np.atleast_1d(bargmann_integral(f, Z, dx))
    rhs = np.atleast_1d(gauss_bargmann_integral(gaussian_weight_mult(dilate_half(f)), Z, gamma))
    return float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0


def fock_project(f: Callable, z, rule: QuadratureRule):
    """P f(z) = int f(w) e^{z . conj(w)} d lambda(w)."""
    if rule.convention != "lambda":
        raise ValueError("P needs a lambda rule")
    wn = complex_nodes(rule)
    Z, single = _points(z, wn.shape[1])
    vals = np.asarray(f(wn), dtype=complex)
    out = _sum_kernel(vals, rule.weights, lambda zz: zz @ np.conj(wn).T, Z)
    return out[0] if single else out


def rotate_i(f: CoefficientVector, sign: int) -> CoefficientVector:
    """C_{+i} (sign=+1) or C_{-i} (sign=-1): coefficient at b times (sign i)^{|b|}."""
    if f.basis is not Basis.FOCK:
        raise ValueError("C_{+-i} acts on Fock-tagged vectors")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    unit = EXACT_I * sign if f.exact else 1j * sign
    return f.with_coeffs({b: (unit ** sum(b)) * c for b, c in f.items()})


# ---------------------------------------------------------------------------
# Weyl translations

def weyl_eval(b, f: Callable, z):
    """W_b f(z) = f(z - b) exp(z.b - b.b/2) for real b."""
    b = np.atleast_1d(np.asarray(b, dtype=float))
    Z, single = _points(z, len(b))
    out = np.asarray(f(Z - b), dtype=complex) * np.exp(Z @ b - 0.5 * (b @ b))
    return out[0] if single else out


@dataclass(frozen=True)
class WeylExpansion:
    vector: CoefficientVector   # coefficients of W_b f up to degree N
    residual: float             # F^2 norm of everything beyond degree N
    degree: int
    extended_degree: int        # last shell summed explicitly for the residual


def _shifted_polynomial(f: CoefficientVector, b):
    """Monomial coefficients of z -> f(z - b)."""
    out = {}
    for beta, c in f.items():
        c = complex(c) / math.sqrt(mi.multi_factorial(beta))
        # prod_j sum_k C(beta_j, k) z_j^k (-b_j)^{beta_j - k}
        terms = {(): c}
        for j, bj in enumerate(beta):
            nxt = {}
            for head, v in terms.items():
                for k in range(bj + 1):
                    coef = math.comb(bj, k) * (-b[j]) ** (bj - k)
                    if coef:
                        nxt[head + (k,)] = nxt.get(head + (k,), 0) + v * coef
            terms = nxt
        for k, v in terms.items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v != 0}


def _axis_table(bj: float, M: int, D: int) -> np.ndarray:
    """T[mu, k] = b^{mu-k} sqrt(mu!) / (mu-k)! * e^{-b^2/2}, zero for mu < k."""
    mu = np.arange(M + 1)[:, None]
    k = np.arange(D + 1)[None, :]
    p = mu - k
    valid = p >= 0
    pc = np.where(valid, p, 0)
    if bj == 0.0:
        logmag = np.where(pc == 0, 0.5 * gammaln(mu + 1.0), -np.inf)
        sign = 1.0
    else:
        logmag = pc * math.log(abs(bj)) + 0.5 * gammaln(mu + 1.0) - gammaln(pc + 1.0) - 0.5 * bj * bj
        sign = np.where(pc % 2 == 1, np.sign(bj), 1.0)
    return np.where(valid, sign * np.exp(logmag), 0.0)


def weyl_coeff(b, f: CoefficientVector, N: int, tol: float | None = None,
               shell_step: int = 16, max_extra: int = 4000) -> WeylExpansion:
    """Coefficients of W_b f up to total degree N, with the dropped tail's F^2 norm.

    W_b f = f(. - b) * W_b e_0 and W_b e_0 has coefficients
    e^{-|b|^2/2} b^g / sqrt(g!). The tail beyond N is summed shell by shell
    until the shells are negligible and decreasing; the last summed shell
    times a geometric factor bounds what remains.
    """
    if f.basis is not Basis.FOCK:
        raise ValueError("W_b acts on Fock-tagged vectors")
    b = tuple(float(v) for v in np.atleast_1d(b))
    n = f.dim
    if len(b) != n:
        raise ValueError("translation vector has the wrong dimension")
    if N < f.degree:
        raise ValueError("truncation degree below the degree of f")
    poly = _shifted_polynomial(f, b)
    D = max((max(k) for k in poly), default=0)
    keys = list(poly)
    pc = np.array([poly[k] for k in keys], dtype=complex)
    karr = np.array(keys, dtype=int).reshape(len(keys), n)

    def shell(level, tables):
        mus = np.array(mi.enumerate_level(n, level), dtype=int)
        acc = np.zeros(len(mus), dtype=complex)
        for i in range(len(keys)):
            prod = np.ones(len(mus))
            for j in range(n):
                prod = prod * tables[j][mus[:, j], karr[i, j]]
            acc += pc[i] * prod
        return mus, acc

    M = N + shell_step
    tables = [_axis_table(b[j], M, D) for j in range(n)]
    coeffs = {}
    for level in range(N + 1):
        mus, acc = shell(level, tables)
        for mu, c in zip(map(tuple, mus), acc):
            if c != 0:
                coeffs[mu] = complex(c)

    tail_sq = 0.0
    prev = None
    level = N + 1
    total_sq = sum(abs(c) ** 2 for c in coeffs.values())
    while True:
        if level > M:
            M = level + shell_step
            if M > N + max_extra:
                raise QuadratureResidualError("Weyl series tail did not settle")
            tables = [_axis_table(b[j], M, D) for j in range(n)]
        _, acc = shell(level, tables)
        s = float(np.sum(np.abs(acc) ** 2))
        tail_sq += s
        scale = max(total_sq + tail_sq, 1e-300)
        if prev is not None and s <= prev and s <= 1e-34 * scale:
            ratio = s / prev if prev > 0 else 0.0
            if ratio < 0.9:
                tail_sq += s * ratio / (1 - ratio)
                break
        prev = s
        level += 1
    residual = math.sqrt(tail_sq)
    if tol is not None and residual > tol:
        raise QuadratureResidualError(
            f"Weyl truncation residual {residual:.3g} exceeds {tol:.3g} at degree {N}")
    return WeylExpansion(CoefficientVector(n, Basis.FOCK, coeffs), residual, N, level)


def translation_identity_sides(t, f: Callable, xs, gamma: QuadratureRule,
                               lam: QuadratureRule, shifted: bool = True):
    """Both sides of G^{-1} W_{t/2} G f (x) = exp(x.t/2 - t.t/4) f(x - t).

    ``shifted`` is passed to :func:`gauss_bargmann_integral`; leave it on for
    entire f (evaluable at complex points).
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    X = np.atleast_2d(np.asarray(xs, dtype=float))
    Gf = lambda Z: gauss_bargmann_integral(f, Z, gamma, shifted=shifted)
    lhs = inverse_gauss_bargmann_integral(lambda Z: weyl_eval(t / 2, Gf, Z), X, lam)
    rhs = np.exp(X @ t / 2 - (t @ t) / 4) * np.asarray(f(X - t))
    return np.atleast_1d(lhs), rhs


def verify_translation_identity(t, f: Callable, xs, gamma: QuadratureRule,
                                lam: QuadratureRule, shifted: bool = True) -> float:
    lhs, rhs = translation_identity_sides(t, f, xs, gamma, lam, shifted)
    return float(np.max(np.abs(lhs - rhs)))
