"""Smooth symbols u : R^n -> C with derivative evaluators, and a small text grammar.

Grammar ``symbol-grammar/1``
----------------------------
An expression over the real variables ``x1 .. xn`` (``x`` is an alias for
``x1``), with

* numbers, ``I`` (imaginary unit) and ``pi``;
* ``+``, ``-``, ``*``, division by a constant, integer powers (``**`` or ``^``);
* ``sin``, ``cos``, ``exp``;
* ``r2`` as shorthand for ``x1**2 + ... + xn**2``.

Examples: ``2 + sin(x)``, ``exp(-I*(x1 - x2))``, ``exp(-r2)``, ``x1*cos(2*x2)``.
Derivatives to the declared order are produced symbolically.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np
import sympy as sp
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from . import multiindex as mi

GRAMMAR_VERSION = "symbol-grammar/1"
FD_TOLERANCE = 1e-5
FD_STEP = 1e-4

_ALLOWED_FUNCS = {sp.sin, sp.cos, sp.exp}
_TOKEN = re.compile(r"^[\sA-Za-z0-9.+\-*/^()]*$")
_NAME = re.compile(r"(?<![0-9.])[A-Za-z][A-Za-z0-9]*")
_FIXED_NAMES = {"x", "r2", "sin", "cos", "exp", "I", "pi"}


class SymbolError(ValueError):
    """Malformed symbol expression or inconsistent derivative evaluators."""


def _variables(n: int):
    return sp.symbols(" ".join(f"x{j + 1}" for j in range(n)), real=True, seq=True)


def _vectorise(expr, xs) -> Callable:
    fn = sp.lambdify(xs, expr, modules="numpy")

    def ev(points):
        P = np.atleast_2d(np.asarray(points))
        out = fn(*[P[:, j] for j in range(P.shape[1])])
        return np.broadcast_to(np.asarray(out, dtype=complex), (P.shape[0],)).copy()
    return ev


def parse_symbol(text: str, n: int):
    """Parse and validate an expression; returns a sympy expression in x1..xn."""
    if not isinstance(text, str) or not text.strip():
        raise SymbolError("empty symbol expression")
    if not _TOKEN.match(text):
        raise SymbolError(f"symbol contains characters outside the grammar: {text!r}")
    for name in _NAME.findall(text):
        if name not in _FIXED_NAMES and not re.fullmatch(r"x[1-9][0-9]*", name):
            raise SymbolError(f"unknown name {name!r} in symbol")
    xs = _variables(n)
    local = {f"x{j + 1}": xs[j] for j in range(n)}
    if n == 1:
        local["x"] = xs[0]
    local.update(r2=sum(v**2 for v in xs), sin=sp.sin, cos=sp.cos, exp=sp.exp,
                 I=sp.I, pi=sp.pi)
    try:
        expr = parse_expr(text, local_dict=local, global_dict={"Integer": sp.Integer,
                          "Float": sp.Float, "Rational": sp.Rational, "Symbol": sp.Symbol},
                          transformations=standard_transformations + (convert_xor,),
                          evaluate=True)
    except Exception as exc:  # sympy raises a zoo of types here
        raise SymbolError(f"cannot parse symbol {text!r}: {exc}") from exc
    if not isinstance(expr, sp.Expr):
        raise SymbolError(f"{text!r} is not an expression")
    extra = expr.free_symbols - set(xs)
    if extra:
        raise SymbolError(f"unknown names in symbol: {sorted(map(str, extra))}")
    for node in sp.preorder_traversal(expr):
        if isinstance(node, sp.Function) and node.func not in _ALLOWED_FUNCS:
            raise SymbolError(f"function {node.func} is not in the grammar")
        if isinstance(node, sp.Pow):
            exponent = node.exp
            if exponent.free_symbols:
                raise SymbolError("only constant exponents are allowed")
            if not (exponent.is_Integer or node.base.free_symbols == set()):
                raise SymbolError("only integer powers of non-constant terms are allowed")
            if exponent.is_Integer and exponent < 0 and node.base.free_symbols:
                raise SymbolError("division by a non-constant term is not in the grammar")
    return expr


@dataclass
class SmoothSymbol:
    """A smooth function on R^n with derivative evaluators up to ``order``.

    ``derivs`` maps multi-indices (including the zero index, which must equal
    ``value``) to vectorised evaluators on rows of real points. Present
    derivatives are checked against central differences of ``value`` at
    fixed probe points on construction unless ``validate=False``.
    """
    dim: int
    value: Callable
    order: int = 0
    derivs: Dict[tuple, Callable] = field(default_factory=dict)
    label: str = ""
    expr: Optional[object] = None
    validate: bool = True

    def __post_init__(self):
        if self.dim < 1 or self.order < 0:
            raise SymbolError("dimension must be >= 1 and order >= 0")
        self.derivs = dict(self.derivs)
        self.derivs.setdefault((0,) * self.dim, self.value)
        for alpha in self.derivs:
            if len(alpha) != self.dim:
                raise SymbolError(f"derivative index {alpha} has the wrong dimension")
        if self.validate:
            self.check_derivatives()

    # construction ---------------------------------------------------------------
    @classmethod
    def from_expr(cls, expr, n: int, order: int, label: str | None = None,
                  validate: bool = True) -> "SmoothSymbol":
        if isinstance(expr, str):
            label = expr if label is None else label
            expr = parse_symbol(expr, n)
        xs = _variables(n)
        derivs = {}
        for alpha in mi.enumerate_up_to(n, order):
            d = expr
            for j, k in enumerate(alpha):
                if k:
                    d = sp.diff(d, xs[j], k)
            derivs[alpha] = _vectorise(d, xs)
        return cls(n, derivs[(0,) * n], order, derivs, label or str(expr), expr, validate)

    @classmethod
    def constant(cls, c, n: int = 1, order: int = 2) -> "SmoothSymbol":
        return cls.from_expr(sp.sympify(c), n, order, label=str(c))

    @classmethod
    def plane_wave(cls, a, order: int = 2, sign: int = -1) -> "SmoothSymbol":
        """exp(sign i a.x); sign=-1 gives the e^{-i a.x} of the Weyl correspondence."""
        a = [sp.nsimplify(v) for v in np.atleast_1d(a)]
        xs = _variables(len(a))
        expr = sp.exp(sign * sp.I * sum(ai * xi for ai, xi in zip(a, xs)))
        return cls.from_expr(expr, len(a), order)

    # derived symbols ------------------------------------------------------------
    def derivative(self, alpha) -> "SmoothSymbol":
        """d^alpha u as a symbol of order ``order - |alpha|``."""
        alpha = mi.as_multiindex(alpha)
        if alpha not in self.derivs:
            raise SymbolError(f"no derivative evaluator for {alpha}")
        rest = self.order - sum(alpha)
        if self.expr is not None:
            xs = _variables(self.dim)
            d = self.expr
            for j, k in enumerate(alpha):
                if k:
                    d = sp.diff(d, xs[j], k)
            return SmoothSymbol.from_expr(d, self.dim, max(rest, 0),
                                          label=f"d{alpha}[{self.label}]", validate=False)
        derivs = {}
        for beta in mi.enumerate_up_to(self.dim, max(rest, 0)):
            key = mi.add(alpha, beta)
            if key in self.derivs:
                derivs[beta] = self.derivs[key]
        return SmoothSymbol(self.dim, self.derivs[alpha], max(rest, 0), derivs,
                            f"d{alpha}[{self.label}]", validate=False)

    def reciprocal(self, order: int | None = None) -> "SmoothSymbol":
        if self.expr is None:
            raise SymbolError("reciprocal needs a symbolic expression")
        return SmoothSymbol.from_expr(1 / self.expr, self.dim,
                                      self.order if order is None else order,
                                      label=f"1/({self.label})", validate=False)

    def __call__(self, points):
        return self.value(points)

    def deriv(self, alpha) -> Callable:
        alpha = mi.as_multiindex(alpha)
        if alpha not in self.derivs:
            raise SymbolError(f"missing derivative evaluator for {alpha}")
        return self.derivs[alpha]

    # validation -----------------------------------------------------------------
    def check_derivatives(self, probes: int = 6, seed: int = 7) -> float:
        """Largest relative mismatch between each first-step derivative and a
        central difference of its parent; raises :class:`SymbolError` over tolerance."""
        rng = np.random.default_rng(seed)
        P = rng.uniform(-2.0, 2.0, size=(probes, self.dim))
        worst = 0.0
        for alpha, ev in self.derivs.items():
            if not any(alpha):
                continue
            j = next(i for i, k in enumerate(alpha) if k)
            parent = mi.sub(alpha, mi.unit(self.dim, j))
            if parent not in self.derivs:
                continue
            step = np.zeros(self.dim)
            step[j] = FD_STEP
            fd = (self.derivs[parent](P + step) - self.derivs[parent](P - step)) / (2 * FD_STEP)
            exact = ev(P)
            err = np.max(np.abs(fd - exact) / np.maximum(1.0, np.abs(exact)))
            worst = max(worst, float(err))
            if err > FD_TOLERANCE:
                raise SymbolError(
                    f"derivative {alpha} of {self.label or 'symbol'} disagrees with finite "
                    f"differences by {err:.3g}")
        return worst
