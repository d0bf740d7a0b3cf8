"""Hermite and Fock orthonormal families and the shared coefficient space.

A :class:`CoefficientVector` is a finitely supported map from multi-indices to
scalars together with a basis tag. With the ``HERMITE`` tag it stands for
``sum c_b h_b`` in L^2(gamma); with ``FOCK`` for ``sum c_b e_b`` in F^2.
Because both families are orthonormal and carry the same ladder formulas,
the two interpretations share every coefficient-level operation.

Coefficients are either Python complex numbers (float mode) or
:class:`~gaussfock.exact.Surd` values (exact mode).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping

import numpy as np

from . import multiindex as mi
from .exact import Surd


class Basis(enum.Enum):
    HERMITE = "hermite"   # h_beta, orthonormal in L^2(gamma)
    FOCK = "fock"         # e_beta = z^beta / sqrt(beta!), orthonormal in F^2


def root(k, exact: bool):
    """sqrt(k) as an exact surd or a float."""
    return Surd.sqrt(k) if exact else math.sqrt(k)


def _coerce(value, exact: bool):
    if exact:
        return Surd.coerce(value)
    if isinstance(value, Surd):
        return complex(value)
    return complex(value)


@dataclass(frozen=True)
class CoefficientVector:
    dim: int
    basis: Basis
    coeffs: Mapping = field(default_factory=dict)
    exact: bool = False

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        clean: Dict[tuple, object] = {}
        for beta, c in dict(self.coeffs).items():
            beta = mi.as_multiindex(beta)
            if len(beta) != self.dim:
                raise ValueError(f"key {beta} does not have dimension {self.dim}")
            c = _coerce(c, self.exact)
            if c != 0:
                clean[beta] = c
        object.__setattr__(self, "coeffs", clean)

    # constructors -------------------------------------------------------------
    @classmethod
    def unit(cls, beta, basis: Basis = Basis.HERMITE, exact: bool = False, scale=1):
        beta = mi.as_multiindex(beta)
        return cls(len(beta), basis, {beta: scale}, exact)

    @classmethod
    def zero(cls, dim: int, basis: Basis = Basis.HERMITE, exact: bool = False):
        return cls(dim, basis, {}, exact)

    @classmethod
    def from_dense(cls, values, dim: int, N: int, basis: Basis = Basis.HERMITE):
        idx = mi.enumerate_up_to(dim, N)
        values = np.asarray(values)
        if values.shape != (len(idx),):
            raise ValueError(f"expected {len(idx)} coefficients, got shape {values.shape}")
        return cls(dim, basis, {b: complex(v) for b, v in zip(idx, values)})

    # views ----------------------------------------------------------------------
    def __getitem__(self, beta):
        return self.coeffs.get(tuple(beta), self._zero())

    def _zero(self):
        return Surd() if self.exact else 0j

    def items(self):
        return self.coeffs.items()

    def __len__(self):
        return len(self.coeffs)

    @property
    def degree(self) -> int:
        """Largest |beta| in the support (0 for the zero vector)."""
        return max((sum(b) for b in self.coeffs), default=0)

    def to_dense(self, N: int) -> np.ndarray:
        idx = mi.index_map(self.dim, N)
        out = np.zeros(len(idx), dtype=complex)
        for beta, c in self.coeffs.items():
            if sum(beta) > N:
                raise ValueError(f"coefficient at {beta} exceeds truncation degree {N}")
            out[idx[beta]] = complex(c)
        return out

    def to_float(self) -> "CoefficientVector":
        if not self.exact:
            return self
        return CoefficientVector(self.dim, self.basis,
                                 {b: complex(c) for b, c in self.coeffs.items()})

    def retag(self, basis: Basis) -> "CoefficientVector":
        return CoefficientVector(self.dim, basis, self.coeffs, self.exact)

    def with_coeffs(self, coeffs) -> "CoefficientVector":
        return CoefficientVector(self.dim, self.basis, coeffs, self.exact)

    # vector space ---------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, CoefficientVector):
            raise TypeError("expected a CoefficientVector")
        if other.dim != self.dim or other.basis != self.basis:
            raise ValueError(
                f"incompatible vectors: ({self.dim}, {self.basis.value}) vs "
                f"({other.dim}, {other.basis.value})")
        if other.exact != self.exact:
            raise ValueError("cannot mix exact and float coefficient vectors")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            out[b] = out[b] + c if b in out else c
        return self.with_coeffs(out)

    def __neg__(self):
        return self.with_coeffs({b: -c for b, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        scalar = _coerce(scalar, self.exact)
        return self.with_coeffs({b: scalar * c for b, c in self.coeffs.items()})

    __rmul__ = __mul__

    def allclose(self, other, atol: float = 1e-12) -> bool:
        self_f, other_f = self.to_float(), other.to_float()
        keys = set(self_f.coeffs) | set(other_f.coeffs)
        return all(abs(self_f[b] - other_f[b]) <= atol for b in keys)


def coeff_inner(f: CoefficientVector, g: CoefficientVector):
    """<f, g> = sum_b f_b conj(g_b); exact when both vectors are exact."""
    f._check(g)
    total = f._zero()
    for b, c in f.coeffs.items():
        d = g.coeffs.get(b)
        if d is not None:
            total = total + c * d.conjugate()
    return total


def coeff_norm_sq(f: CoefficientVector):
    return coeff_inner(f, f)


# ---------------------------------------------------------------------------
# point evaluation

def hermite_table_1d(N: int, t) -> np.ndarray:
    """Rows h_0(t), ..., h_N(t) by the three-term recurrence (complex t allowed)."""
    t = np.asarray(t)
    t = t.astype(complex if np.iscomplexobj(t) else float)
    out = np.empty((N + 1,) + t.shape, dtype=t.dtype)
    out[0] = 1.0
    if N >= 1:
        out[1] = t
    for k in range(1, N):
        out[k + 1] = (t * out[k] - math.sqrt(k) * out[k - 1]) / math.sqrt(k + 1)
    return out


def hermite_table(indices, X) -> np.ndarray:
    """Matrix [h_beta(x)] with rows over ``indices`` and columns over the rows of X.

    Complex points evaluate the entire extension of h_beta.
    """
    X = np.atleast_2d(np.asarray(X))
    X = X.astype(complex if np.iscomplexobj(X) else float)
    indices = list(indices)
    n = X.shape[1]
    N = max((max(b) for b in indices), default=0)
    axes = [hermite_table_1d(N, X[:, j]) for j in range(n)]
    out = np.ones((len(indices), X.shape[0]), dtype=X.dtype)
    for i, beta in enumerate(indices):
        for j, k in enumerate(beta):
            if k:
                out[i] *= axes[j][k]
    return out


def hermite_eval(beta, x) -> float:
    """h_beta(x) = prod_j h_{beta_j}(x_j)."""
    beta = mi.as_multiindex(beta)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (len(beta),):
        raise ValueError(f"point {x} does not match multi-index {beta}")
    return float(hermite_table([beta], x[None, :])[0, 0])


_TILDE_NORM = (2.0 / math.pi) ** 0.25


def hermite_tilde_table_1d(N: int, t) -> np.ndarray:
    """Rows h~_0(t), ..., h~_N(t), the L^2(dx) family with B h~_k = e_k.

    h~_k(t) = (2/pi)^{1/4} e^{-t^2} h_k(2t); the Gaussian factor is folded into
    the recurrence start so large arguments neither overflow nor underflow.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty((N + 1,) + t.shape)
    out[0] = _TILDE_NORM * np.exp(-t * t)
    if N >= 1:
        out[1] = 2 * t * out[0]
    for k in range(1, N):
        out[k + 1] = (2 * t * out[k] - math.sqrt(k) * out[k - 1]) / math.sqrt(k + 1)
    return out


def hermite_tilde_table(indices, X) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=float))
    indices = list(indices)
    n = X.shape[1]
    N = max((max(b) for b in indices), default=0)
    axes = [hermite_tilde_table_1d(N, X[:, j]) for j in range(n)]
    out = np.ones((len(indices), X.shape[0]))
    for i, beta in enumerate(indices):
        for j, k in enumerate(beta):
            out[i] *= axes[j][k]
    return out


def hermite_tilde_eval(beta, x) -> float:
    """(2/pi)^{n/4} (2^|b| b!)^{-1/2} e^{-|x|^2} H_b(sqrt(2) x) with physicists' H."""
    beta = mi.as_multiindex(beta)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (len(beta),):
        raise ValueError(f"point {x} does not match multi-index {beta}")
    return float(hermite_tilde_table([beta], x[None, :])[0, 0])


def fock_table(indices, Z) -> np.ndarray:
    """Matrix [e_beta(z)] with rows over ``indices`` and columns over the rows of Z."""
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    indices = list(indices)
    out = np.ones((len(indices), Z.shape[0]), dtype=complex)
    for i, beta in enumerate(indices):
        for j, k in enumerate(beta):
            if k:
                out[i] *= Z[:, j] ** k / math.sqrt(math.factorial(k))
    return out


def fock_eval(beta, z) -> complex:
    """e_beta(z) = z^beta / sqrt(beta!)."""
    beta = mi.as_multiindex(beta)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if z.shape != (len(beta),):
        raise ValueError(f"point {z} does not match multi-index {beta}")
    return complex(fock_table([beta], z[None, :])[0, 0])


def eval_expansion(f: CoefficientVector, points):
    """sum_b f_b basis_b(point) at one point (1-d input) or many (rows of a 2-d array)."""
    pts = np.asarray(points)
    single = pts.ndim <= 1
    pts = pts.reshape(1, -1) if single else pts
    if pts.shape[1] != f.dim:
        raise ValueError(f"points of dimension {pts.shape[1]} for a {f.dim}-d expansion")
    if not f.coeffs:
        out = np.zeros(pts.shape[0], dtype=complex)
    else:
        indices = list(f.coeffs)
        c = np.array([complex(f.coeffs[b]) for b in indices])
        if f.basis is Basis.HERMITE:
            if np.iscomplexobj(pts) and np.any(np.imag(pts)):
                raise ValueError("Hermite expansions are evaluated at real points")
            table = hermite_table(indices, np.real(pts))
        else:
            table = fock_table(indices, pts)
        out = c @ table
    return out[0] if single else out


def evaluator(f: CoefficientVector):
    """Vectorised callable x -> f(x) on rows of a point array."""
    return lambda pts: eval_expansion(f, np.atleast_2d(pts))


def iter_levels(f: CoefficientVector) -> Iterable[int]:
    return sorted({sum(b) for b in f.coeffs})
