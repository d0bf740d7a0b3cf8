"""The Fock-space integral operator S_phi f(z) = int f(w) e^{z.conj(w)} phi(z - conj(w)) d lambda(w).

Two routes are provided and compared:

* direct: quadrature of the kernel display, with phi built from a symbol u by
  phi(z) = kappa int u(2x) e^{-2 (x - i z/2).(x - i z/2)} dx;
* factored: S_phi = C_i G M_u G^{-1} C_{-i}, i.e. the Galerkin matrix of u
  conjugated by the diagonal phases i^{|alpha|}.

The constant kappa is calibrated at run time from u = 1 (expected (2/pi)^{n/2}).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import multiindex as mi
from .basis import Basis, CoefficientVector, fock_table
from .multipliers import GalerkinMatrix, galerkin_multiplier, probe_grid
from .quadrature import complex_nodes, gamma_rule, lambda_rule
from .symbols import SmoothSymbol
from .transforms import rotate_i

_CHUNK = 2048


class CalibrationError(RuntimeError):
    """No single kappa makes S_{kappa phi} the identity for u = 1."""


class PreconditionError(ValueError):
    """A documented precondition does not hold (e.g. the symbol vanishes)."""


def expected_kappa(n: int) -> float:
    return (2.0 / math.pi) ** (n / 2)


# ---------------------------------------------------------------------------
# phi from a symbol

def phi_from_symbol(u: Callable, z, n: int, count: int = 60, kappa: float = 1.0):
    """kappa int u(2x) exp(-2 (x - i z/2).(x - i z/2)) dx for complex z (one point or rows).

    With z = p + i q and y = x + q/2 the integrand is
    u(2y - q) e^{-2 y.y} e^{2 i p.y} e^{p.p/2}: a real shift of the Gaussian
    centre, so u is only ever evaluated at real points.
    """
    Z = np.asarray(z, dtype=complex)
    single = Z.ndim <= 1
    Z = np.atleast_2d(Z.reshape(1, -1) if single else Z)
    if Z.shape[1] != n:
        raise ValueError("point dimension does not match the symbol")
    rule = gamma_rule(count, n)
    y = rule.nodes / 2                                   # e^{-2|y|^2} dy, mass (pi/2)^{n/2}
    mass = (math.pi / 2) ** (n / 2)
    out = np.empty(Z.shape[0], dtype=complex)
    step = max(1, _CHUNK * 16 // len(rule))
    for s in range(0, Z.shape[0], step):
        p = Z[s:s + step].real
        q = Z[s:s + step].imag
        pts = (2 * y[None, :, :] - q[:, None, :]).reshape(-1, n)
        uv = np.asarray(u(pts), dtype=complex).reshape(len(p), len(y))
        osc = np.exp(2j * p @ y.T)
        out[s:s + step] = (uv * osc) @ rule.weights * np.exp(0.5 * np.sum(p * p, axis=1))
    out *= kappa * mass
    return out[0] if single else out


# ---------------------------------------------------------------------------
# direct route

def direct_kernel(phi: Callable, z, rule) -> np.ndarray:
    """Weighted kernel K[k, i] = w_i e^{z_k.conj(w_i)} phi(z_k - conj(w_i)) of a lambda rule.

    S_phi f(z_k) is then K @ f(nodes); tabulating K once serves many f.
    """
    w = complex_nodes(rule)
    Z = np.atleast_2d(np.asarray(z, dtype=complex))
    wb = np.conj(w)
    args = (Z[:, None, :] - wb[None, :, :]).reshape(-1, w.shape[1])
    ph = np.asarray(phi(args), dtype=complex).reshape(len(Z), len(w))
    return ph * np.exp(Z @ wb.T) * rule.weights[None, :]


def sphi_direct(phi: Callable, f: Callable, z, rule) -> np.ndarray:
    """Quadrature of S_phi f(z) over a lambda rule; phi and f take rows of complex points."""
    w = complex_nodes(rule)
    Z = np.atleast_2d(np.asarray(z, dtype=complex))
    fw = np.asarray(f(w), dtype=complex)
    out = np.empty(Z.shape[0], dtype=complex)
    step = max(1, _CHUNK * 16 // len(w))
    for s in range(0, Z.shape[0], step):
        out[s:s + step] = direct_kernel(phi, Z[s:s + step], rule) @ fw
    return out


def calibrate_normalization(n: int, lam_count: Optional[int] = None, phi_count: int = 24,
                            max_degree: int = 3, tol: float = 1e-6) -> dict:
    """kappa with S_{kappa phi_1} = I on {e_b : |b| <= max_degree}, where phi_1 comes from u = 1.

    Every probe (basis vector, sample point) gives its own estimate
    e_b(z) / S_{phi_1} e_b(z); their spread must stay within ``tol``.
    """
    lam_count = lam_count or (20 if n == 1 else 10)
    rule = lambda_rule(lam_count, n)
    one = lambda pts: np.ones(len(pts))
    phi = lambda pts: phi_from_symbol(one, pts, n, phi_count)
    rng = np.random.default_rng(0)
    Z = rng.uniform(-0.6, 0.6, (4, n)) + 1j * rng.uniform(-0.6, 0.6, (4, n)) + 0.5
    K = direct_kernel(phi, Z, rule)
    w = complex_nodes(rule)
    estimates = []
    for beta in mi.enumerate_up_to(n, max_degree):
        Sf = K @ fock_table([beta], w)[0]
        estimates.extend(fock_table([beta], Z)[0] / Sf)
    est = np.array(estimates)
    kappa = complex(np.mean(est))
    spread = float(np.max(np.abs(est - kappa)))
    if spread > tol or abs(kappa.imag) > tol:
        raise CalibrationError(f"kappa estimates spread by {spread:.3g} (> {tol:.3g})")
    return {"kappa": kappa.real, "spread": spread, "expected": expected_kappa(n),
            "probes": len(est)}


def sphi_direct_matrix(u: SmoothSymbol, N: int, kappa: float, lam_count: int = 32,
                       phi_count: int = 60, circle_points: int = 64,
                       radius: float = 1.0) -> np.ndarray:
    """Matrix <S_phi e_b, e_a> for n = 1, |a|, |b| <= N, from the direct kernel.

    S_phi e_b is sampled on the circle |z| = radius and its Taylor
    coefficients are read off by FFT.
    """
    if u.dim != 1:
        raise ValueError("the direct matrix is implemented for n = 1")
    rule = lambda_rule(lam_count, 1)
    w = complex_nodes(rule)[:, 0]
    M = circle_points
    zc = radius * np.exp(2j * np.pi * np.arange(M) / M)
    args = (zc[:, None] - np.conj(w)[None, :]).reshape(-1, 1)
    PHI = phi_from_symbol(u, args, 1, phi_count, kappa).reshape(M, len(w))
    K = PHI * np.exp(zc[:, None] * np.conj(w)[None, :]) * rule.weights[None, :]
    D = np.empty((N + 1, N + 1), dtype=complex)
    ks = np.arange(N + 1)
    norms = np.array([math.sqrt(math.factorial(k)) for k in ks])
    for b in ks:
        samples = K @ (w**b / norms[b])
        taylor = np.fft.fft(samples)[: N + 1] / M / radius**ks
        D[:, b] = taylor * norms
    return D


# ---------------------------------------------------------------------------
# factored route

def _phases(n: int, N: int, sign: int) -> np.ndarray:
    return np.array([(sign * 1j) ** sum(b) for b in mi.enumerate_up_to(n, N)])


def factored_matrix(T: GalerkinMatrix) -> np.ndarray:
    """Matrix of C_i G M_u G^{-1} C_{-i} on e_b, |b| <= N: i^{|a|} T_{ab} (-i)^{|b|}."""
    return _phases(T.dim, T.degree, 1)[:, None] * T.matrix * _phases(T.dim, T.degree, -1)[None, :]


@dataclass(frozen=True)
class FactoredResult:
    vector: CoefficientVector
    degree: int
    residual: float


def sphi_factored(u: SmoothSymbol, f: CoefficientVector, N: int,
                  count: Optional[int] = None, T: Optional[GalerkinMatrix] = None) -> FactoredResult:
    """C_i G M_u G^{-1} C_{-i} f truncated to degree N."""
    if f.basis is not Basis.FOCK:
        raise ValueError("S_phi acts on Fock-tagged vectors")
    if N < f.degree:
        raise ValueError("truncation degree below the degree of f")
    if T is None:
        T = galerkin_multiplier(u, N, count)
    g = rotate_i(f.to_float(), -1).retag(Basis.HERMITE)
    out = T.matrix @ g.to_dense(N)
    h = CoefficientVector.from_dense(out, f.dim, N, Basis.HERMITE).retag(Basis.FOCK)
    return FactoredResult(rotate_i(h, 1), N, T.residual)


# ---------------------------------------------------------------------------
# corollary checks

def _inner(T: np.ndarray, n: int, inner: int) -> np.ndarray:
    k = mi.count_up_to(n, inner)
    return T[:k, :k]


def commutation_check(u: SmoothSymbol, v: SmoothSymbol, N: int, inner: int = 2,
                      count: Optional[int] = None) -> float:
    """Frobenius norm of [T_u, T_v] on the fixed inner block of degrees <= inner."""
    Tu = galerkin_multiplier(u, N, count).matrix
    Tv = galerkin_multiplier(v, N, count).matrix
    return float(np.linalg.norm(_inner(Tu @ Tv - Tv @ Tu, u.dim, inner)))


def invertibility_check(u: SmoothSymbol, N: int, inner: int = 2, grid=None,
                        floor: float = 1e-3, count: Optional[int] = None) -> float:
    """||T_u T_{1/u} - I|| (spectral) on the inner block of degrees <= inner.

    Raises :class:`PreconditionError` if |u| drops below ``floor`` on the probe grid.
    """
    grid = probe_grid(u.dim, 2 * math.pi, 257 if u.dim == 1 else 65) if grid is None else grid
    low = float(np.min(np.abs(u(grid))))
    if low < floor:
        raise PreconditionError(f"|u| reaches {low:.3g} on the probe grid; 1/u is not bounded")
    Tu = galerkin_multiplier(u, N, count).matrix
    Tinv = galerkin_multiplier(u.reciprocal(order=0), N, count).matrix
    R = _inner(Tu @ Tinv, u.dim, inner) - np.eye(mi.count_up_to(u.dim, inner))
    return float(np.linalg.norm(R, 2))
