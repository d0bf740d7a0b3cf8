"""Multiplication operators on W^{2,m}(gamma): Galerkin sections and their norms.

Operator norms between Sobolev orders use the Hilbertian inner product
sum_{|alpha|<=m} <d^alpha f, d^alpha g>, whose Gram matrix is diagonal on the
Hermite basis (see :func:`gaussfock.norms.hilbert_sobolev_weights`).
Finite sections approximate multiplier norms from below, so every norm
report carries the truncation degree and the change from degree N - 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np
import sympy as sp

from . import multiindex as mi
from .basis import Basis, hermite_table
from .norms import hilbert_sobolev_weights
from .quadrature import (QuadratureResidualError, gamma_rule, legendre_rule,
                         tensorize)
from .symbols import SmoothSymbol, SymbolError, _variables, _vectorise


class SpectralError(RuntimeError):
    """The singular value computation did not converge."""


@dataclass(frozen=True)
class GalerkinMatrix:
    dim: int
    basis: Basis
    degree: int
    matrix: np.ndarray
    residual: float = 0.0
    label: str = ""

    def __post_init__(self):
        side = math.comb(self.dim + self.degree, self.dim)
        if self.matrix.shape != (side, side):
            raise ValueError(f"Galerkin matrix must be {side} x {side}, got {self.matrix.shape}")

    @property
    def indices(self):
        return mi.enumerate_up_to(self.dim, self.degree)

    def section(self, N: int) -> "GalerkinMatrix":
        """Principal block on degrees <= N (indices are graded, so it is a leading block)."""
        if N > self.degree:
            raise ValueError("section degree exceeds the matrix degree")
        k = mi.count_up_to(self.dim, N)
        return GalerkinMatrix(self.dim, self.basis, N, self.matrix[:k, :k], self.residual, self.label)


def default_quad_points(N: int) -> int:
    return 2 * N + 16


def _galerkin_raw(u, n: int, N: int, count: int) -> np.ndarray:
    rule = gamma_rule(count, n)
    H = hermite_table(mi.enumerate_up_to(n, N), rule.nodes)
    vals = np.asarray(u(rule.nodes), dtype=complex) * rule.weights
    return (H * vals) @ H.T


def galerkin_multiplier(u: SmoothSymbol, N: int, count: Optional[int] = None,
                        tol: Optional[float] = None) -> GalerkinMatrix:
    """T_{alpha beta} = int u h_beta h_alpha d gamma on degrees <= N.

    Computed at ``count`` and ``2 count`` nodes per axis; the fine result is
    returned and the entrywise difference is the residual.
    """
    n = u.dim
    count = count or default_quad_points(N)
    coarse = _galerkin_raw(u, n, N, count)
    fine = _galerkin_raw(u, n, N, 2 * count)
    residual = float(np.max(np.abs(fine - coarse)))
    if tol is not None and residual > tol:
        raise QuadratureResidualError(
            f"Galerkin doubling residual {residual:.3g} exceeds {tol:.3g} (N={N}, {count} nodes)")
    return GalerkinMatrix(n, Basis.HERMITE, N, fine, residual, u.label)


def sobolev_operator_norm(T: GalerkinMatrix, m_in: int, m_out: int) -> float:
    """||S_out^{1/2} T S_in^{-1/2}||_2 with the diagonal Hilbertian Gram matrices."""
    if m_in < 0 or m_out < 0:
        raise ValueError("orders must be >= 0")
    w_in = np.sqrt(hilbert_sobolev_weights(T.dim, T.degree, m_in))
    w_out = np.sqrt(hilbert_sobolev_weights(T.dim, T.degree, m_out))
    A = (w_out[:, None] * T.matrix) / w_in[None, :]
    try:
        return float(np.linalg.norm(A, 2))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise SpectralError("singular value iteration did not converge") from exc


def lemma33_bound(u: SmoothSymbol, m: int, grid) -> float:
    """sum_{|alpha|<=m} max over the grid of |d^alpha u|."""
    grid = np.atleast_2d(np.asarray(grid, dtype=float))
    total = 0.0
    for alpha in mi.enumerate_up_to(u.dim, m):
        total += float(np.max(np.abs(u.deriv(alpha)(grid))))
    return total


def probe_grid(n: int, half_width: float = 4.0, per_axis: int = 81) -> np.ndarray:
    axis = np.linspace(-half_width, half_width, per_axis)
    return np.array(np.meshgrid(*([axis] * n), indexing="ij")).reshape(n, -1).T


# ---------------------------------------------------------------------------
# mollification

@dataclass
class BumpKernel:
    """K(s) proportional to exp(-1/(1 - |s|^2)) on the unit ball, mass one."""
    dim: int
    order: int
    count: int = 128
    derivs: Dict[tuple, object] = field(init=False)
    nodes: np.ndarray = field(init=False)
    weights: np.ndarray = field(init=False)
    mass: float = field(init=False)

    def __post_init__(self):
        xs = _variables(self.dim)
        rho = 1 - sum(v**2 for v in xs)
        K = sp.exp(-1 / rho)
        self.derivs = {}
        for alpha in mi.enumerate_up_to(self.dim, self.order):
            d = K
            for j, k in enumerate(alpha):
                if k:
                    d = sp.diff(d, xs[j], k)
            self.derivs[alpha] = _vectorise(sp.simplify(d), xs)
        rule = tensorize(legendre_rule(-1.0, 1.0, self.count), self.dim, cap=10**7)
        # K and its low derivatives are below 1e-30 once 1 - |s|^2 < 0.01, and
        # evaluating them there divides underflowed zeros
        inside = np.sum(rule.nodes**2, axis=1) < 1 - 0.01
        self.nodes = rule.nodes[inside]
        self.weights = rule.weights[inside]
        self.mass = float(np.sum(self.weights * self.values((0,) * self.dim).real))

    def values(self, alpha) -> np.ndarray:
        """d^alpha K at the (interior) quadrature nodes, unnormalised."""
        return self.derivs[alpha](self.nodes)


def mollify(u: SmoothSymbol, r: float, kernel: Optional[BumpKernel] = None,
            order: Optional[int] = None) -> SmoothSymbol:
    """u_r(x) = int r^{-n} K(t/r) u(x - t) dt, with d^alpha u_r = r^{-|alpha|} int d^alpha K(s) u(x - r s) ds."""
    if not 0 < r <= 1:
        raise ValueError("mollification radius must be in (0, 1]")
    order = u.order if order is None else order
    if kernel is None or kernel.dim != u.dim or kernel.order < order:
        kernel = BumpKernel(u.dim, order)
    s = kernel.nodes
    w = kernel.weights / kernel.mass

    def make(alpha):
        kv = kernel.values(alpha) * w
        scale = r ** (-sum(alpha))

        def ev(points):
            P = np.atleast_2d(np.asarray(points, dtype=float))
            shifted = (P[:, None, :] - r * s[None, :, :]).reshape(-1, u.dim)
            vals = np.asarray(u(shifted), dtype=complex).reshape(P.shape[0], len(s))
            return scale * (vals @ kv)
        return ev

    derivs = {alpha: make(alpha) for alpha in mi.enumerate_up_to(u.dim, order)}
    return SmoothSymbol(u.dim, derivs[(0,) * u.dim], order, derivs,
                        f"mollify[{u.label}, r={r:g}]", validate=False)


# ---------------------------------------------------------------------------
# two-sided quantities for the multiplier-norm equivalence

@dataclass(frozen=True)
class Theorem36Record:
    lhs: float
    rhs: float
    lhs_prev: float       # the same quantities at degree N - 2
    rhs_prev: float
    degree: int
    residual: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs

    @property
    def increment(self) -> float:
        """Relative change of lhs and rhs from N - 2 to N (convergence diagnostic)."""
        return max(abs(self.lhs - self.lhs_prev) / self.lhs, abs(self.rhs - self.rhs_prev) / self.rhs)


def theorem36_quantities(u: SmoothSymbol, m: int, N: int,
                         count: Optional[int] = None) -> Theorem36Record:
    """lhs = ||T_u||_{m -> m}; rhs = sum_{|alpha|=m} ||T_{d^alpha u}||_{m -> 0} + ||T_u||_{0 -> 0}."""
    if u.order < m:
        raise SymbolError(f"symbol needs derivatives to order {m}")
    if N < 2:
        raise ValueError("need N >= 2 to report the N - 2 increment")
    Tu = galerkin_multiplier(u, N, count)
    parts = [galerkin_multiplier(u.derivative(a), N, count) for a in mi.enumerate_level(u.dim, m)]
    residual = max([Tu.residual] + [P.residual for P in parts])

    def sides(deg):
        T = Tu.section(deg)
        lhs = sobolev_operator_norm(T, m, m)
        rhs = sobolev_operator_norm(T, 0, 0)
        if m > 0:
            rhs += sum(sobolev_operator_norm(P.section(deg), m, 0) for P in parts)
        return lhs, rhs

    lhs, rhs = sides(N)
    lhs_prev, rhs_prev = sides(N - 2)
    return Theorem36Record(lhs, rhs, lhs_prev, rhs_prev, N, residual)
