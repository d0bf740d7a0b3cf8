"""Gaussian-weighted quadrature on R^n and C^n.

Everything starts from one 1-D rule for the standard normal measure
d gamma(t) = (2 pi)^{-1/2} e^{-t^2/2} dt, built by Golub-Welsch. The other
measures are reached by scaling nodes:

* d lambda on C^n: every real axis is N(0, 1/2), nodes t / sqrt(2);
* e^{-2|x|^2} dx: nodes t / 2 and total mass (pi/2)^{n/2};
* Lebesgue dx: nodes sigma t, weights divided by the Gaussian density.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal

DEFAULT_NODE_CAP = 16**4


class QuadratureError(RuntimeError):
    pass


class QuadratureResidualError(RuntimeError):
    """A quadrature result failed its doubling-residual check."""


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray      # shape (count, dim)
    weights: np.ndarray    # shape (count,)
    convention: str        # "gamma", "lambda" or "lebesgue"
    points_per_axis: int = 0

    @property
    def dim(self) -> int:
        return self.nodes.shape[1]

    def __len__(self):
        return len(self.weights)


@lru_cache(maxsize=64)
def _golub_welsch(count: int):
    if count < 1:
        raise ValueError("a rule needs at least one node")
    if count == 1:
        return np.zeros(1), np.ones(1)
    off = np.sqrt(np.arange(1, count, dtype=float))
    try:
        nodes, vecs = eigh_tridiagonal(np.zeros(count), off)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise QuadratureError(f"eigen decomposition failed for {count} nodes") from exc
    weights = vecs[0] ** 2
    # symmetrise: the rule is exactly symmetric about 0
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    weights = weights / weights.sum()
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_hermite_gamma(count: int) -> QuadratureRule:
    """count-point rule for d gamma on R, exact up to degree 2 count - 1."""
    x, w = _golub_welsch(count)
    return QuadratureRule(x[:, None], w, "gamma", count)


def tensorize(rule: QuadratureRule, n: int, cap: int = DEFAULT_NODE_CAP) -> QuadratureRule:
    """Cartesian power of a 1-D rule."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if rule.dim != 1:
        raise ValueError("tensorize expects a 1-D rule")
    size = len(rule) ** n
    if size > cap:
        raise QuadratureError(f"tensor rule with {size} nodes exceeds the cap {cap}")
    if n == 1:
        return rule
    x = rule.nodes[:, 0]
    nodes = np.array(list(itertools.product(x, repeat=n)))
    weights = np.prod(np.array(list(itertools.product(rule.weights, repeat=n))), axis=1)
    return QuadratureRule(nodes, weights, rule.convention, rule.points_per_axis)


def gamma_rule(count: int, n: int = 1, cap: int = DEFAULT_NODE_CAP) -> QuadratureRule:
    return tensorize(gauss_hermite_gamma(count), n, cap)


def lambda_rule(count: int, n: int = 1, cap: int = DEFAULT_NODE_CAP) -> QuadratureRule:
    """Rule for d lambda on C^n over the 2n real axes (x_1..x_n, y_1..y_n)."""
    base = tensorize(gauss_hermite_gamma(count), 2 * n, cap)
    return QuadratureRule(base.nodes / math.sqrt(2.0), base.weights, "lambda", count)


def lebesgue_rule(count: int, n: int = 1, sigma: float = 1.0,
                  cap: int = DEFAULT_NODE_CAP) -> QuadratureRule:
    """Gamma rule dressed for dx: nodes sigma t, weights w / density."""
    base = tensorize(gauss_hermite_gamma(count), n, cap)
    t = base.nodes
    inv_density = (2 * math.pi) ** (n / 2) * np.exp(0.5 * np.sum(t * t, axis=1))
    return QuadratureRule(sigma * t, base.weights * inv_density * sigma**n, "lebesgue", count)


def conjugate_kernel_rule(count: int, n: int = 1, cap: int = DEFAULT_NODE_CAP) -> QuadratureRule:
    """Rule for int g(z) e^{-conj(z).conj(z)/2} d lambda(z) over C^n.

    With z = u + i v the weight e^{-|z|^2 - conj(z)^2/2} equals
    e^{-3u^2/2 - v^2/2} e^{i u.v}: Gaussian in u and v with the entire phase
    folded into complex weights. A plain lambda rule would instead have to
    integrate the growing factor e^{v^2/2}. Nodes are the 2n real axes
    (u_1..u_n, v_1..v_n) as in :func:`lambda_rule`.
    """
    base = tensorize(gauss_hermite_gamma(count), 2 * n, cap)
    u = base.nodes[:, :n] / math.sqrt(3.0)
    v = base.nodes[:, n:]
    weights = base.weights * (2.0 / math.sqrt(3.0)) ** n * np.exp(1j * np.sum(u * v, axis=1))
    return QuadratureRule(np.hstack([u, v]), weights, "lambda-conj", count)


def legendre_rule(a: float, b: float, count: int) -> QuadratureRule:
    """Gauss-Legendre rule for dx on [a, b], for compactly supported integrands."""
    x, w = np.polynomial.legendre.leggauss(count)
    half = 0.5 * (b - a)
    return QuadratureRule((half * x + 0.5 * (a + b))[:, None], half * w, "lebesgue", count)


def complex_nodes(rule: QuadratureRule) -> np.ndarray:
    """Points z = x + i y of a lambda rule, shape (count, n)."""
    if rule.convention not in ("lambda", "lambda-conj"):
        raise ValueError("complex nodes need a lambda rule")
    n = rule.dim // 2
    return rule.nodes[:, :n] + 1j * rule.nodes[:, n:]


def integrate_gamma(f: Callable, rule: QuadratureRule):
    """sum_k w_k f(x_k) approximating int f d gamma."""
    if rule.convention != "gamma":
        raise ValueError("integrate_gamma needs a gamma rule")
    return np.sum(rule.weights * np.asarray(f(rule.nodes)))


def integrate_lambda(f: Callable, rule: QuadratureRule):
    """int_{C^n} f d lambda with f evaluated on complex points."""
    if rule.convention != "lambda":
        raise ValueError("integrate_lambda needs a lambda rule")
    return np.sum(rule.weights * np.asarray(f(complex_nodes(rule))))


def integrate_dx(f: Callable, rule: QuadratureRule):
    if rule.convention != "lebesgue":
        raise ValueError("integrate_dx needs a Lebesgue-dressed rule")
    return np.sum(rule.weights * np.asarray(f(rule.nodes)))


def integrate_scaled_gaussian(f: Callable, rule: QuadratureRule):
    """int_{R^n} f(x) e^{-2|x|^2} dx from a gamma rule (x = t / 2)."""
    if rule.convention != "gamma":
        raise ValueError("integrate_scaled_gaussian needs a gamma rule")
    n = rule.dim
    return (math.pi / 2) ** (n / 2) * np.sum(rule.weights * np.asarray(f(rule.nodes / 2)))


def with_doubling(compute: Callable[[int], object], count: int, tol: float | None = None):
    """Run ``compute`` at ``count`` and ``2 count`` nodes; return (fine value, residual)."""
    coarse = np.asarray(compute(count))
    fine = np.asarray(compute(2 * count))
    residual = float(np.max(np.abs(fine - coarse))) if fine.size else 0.0
    if tol is not None and residual > tol:
        raise QuadratureResidualError(
            f"doubling residual {residual:.3g} exceeds tolerance {tol:.3g} at {count} nodes")
    return fine, residual
