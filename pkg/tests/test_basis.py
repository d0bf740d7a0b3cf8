import math
from fractions import Fraction

import numpy as np
import pytest
from numpy.polynomial import hermite_e

from gaussfock import multiindex as mi
from gaussfock.basis import (Basis, CoefficientVector, coeff_inner, coeff_norm_sq,
                             eval_expansion, fock_eval, hermite_eval, hermite_table,
                             hermite_table_1d, hermite_tilde_eval, hermite_tilde_table)
from gaussfock.exact import I, Surd, exact_sqrt
from gaussfock.quadrature import gamma_rule, integrate_dx, lebesgue_rule


def rodrigues(k, t):
    """Normalised probabilists' Hermite polynomial via numpy's He_k."""
    c = np.zeros(k + 1)
    c[k] = 1
    return hermite_e.hermeval(t, c) / math.sqrt(math.factorial(k))


def test_hermite_matches_numpy_oracle():
    t = np.linspace(-4, 4, 41)
    table = hermite_table_1d(10, t)
    for k in range(11):
        ref = rodrigues(k, t)
        assert np.max(np.abs(table[k] - ref)) <= 1e-12 * max(1.0, np.max(np.abs(ref)))


def test_hermite_examples():
    assert hermite_eval((0,), 0.3) == pytest.approx(1.0, abs=1e-15)
    assert hermite_eval((2,), 1.0) == pytest.approx(0.0, abs=1e-15)
    assert hermite_eval((1, 1), (2.0, 3.0)) == pytest.approx(6.0, abs=1e-14)


def test_hermite_orthonormal_by_quadrature():
    rule = gamma_rule(16, 2)
    idx = mi.enumerate_up_to(2, 6)
    H = hermite_table(idx, rule.nodes)
    gram = (H * rule.weights) @ H.T
    assert np.max(np.abs(gram - np.eye(len(idx)))) < 1e-12


def test_hermite_accepts_complex_points():
    z = np.array([0.3 + 0.7j, -1.1 - 0.2j])
    tab = hermite_table_1d(5, z)
    for k in range(6):
        c = np.zeros(k + 1)
        c[k] = 1
        assert np.allclose(tab[k], hermite_e.hermeval(z, c) / math.sqrt(math.factorial(k)),
                           atol=1e-13)


def test_hermite_tilde_examples_and_orthonormality():
    c = (2 / math.pi) ** 0.25
    assert hermite_tilde_eval((0,), 0.0) == pytest.approx(c, abs=1e-15)
    t = 0.7
    assert hermite_tilde_eval((1,), t) == pytest.approx(2 * t * c * math.exp(-t * t), abs=1e-15)
    rule = lebesgue_rule(40, 1, sigma=0.5)
    idx = mi.enumerate_up_to(1, 6)
    H = hermite_tilde_table(idx, rule.nodes)
    gram = (H * rule.weights) @ H.T
    assert np.max(np.abs(gram - np.eye(len(idx)))) < 1e-10
    one = integrate_dx(lambda x: hermite_tilde_table([(0,)], x)[0] ** 2, rule)
    assert one == pytest.approx(1.0, abs=1e-12)


def test_fock_basis_values():
    z = np.array([0.4 - 1.2j, 2.0 + 0.5j])
    assert fock_eval((3, 1), z) == pytest.approx(z[0] ** 3 * z[1] / math.sqrt(6), rel=1e-14)
    assert fock_eval((0, 0), z) == 1


def test_coefficient_vector_basics():
    f = CoefficientVector(1, Basis.HERMITE, {(0,): 1, (2,): 1})
    assert eval_expansion(f, [1.0]) == pytest.approx(1.0, abs=1e-15)  # h0 + h2 at 1
    assert f.degree == 2 and len(f) == 2
    z = CoefficientVector.zero(1)
    assert z.degree == 0 and len(z) == 0
    assert (f - f).coeffs == {}
    with pytest.raises(ValueError):
        f + CoefficientVector.unit((1,), Basis.FOCK)
    with pytest.raises(ValueError):
        CoefficientVector(2, Basis.HERMITE, {(1,): 1})
    dense = f.to_dense(3)
    assert np.allclose(dense, [1, 0, 1, 0])
    assert CoefficientVector.from_dense(dense, 1, 3).allclose(f)


def test_coeff_inner_is_conjugate_linear_in_second_slot():
    f = CoefficientVector(1, Basis.FOCK, {(1,): I}, exact=True)
    g = CoefficientVector.unit((1,), Basis.FOCK, exact=True)
    assert coeff_inner(f, g) == I
    assert coeff_inner(g, f) == -I
    h = CoefficientVector(1, Basis.HERMITE, {(0,): exact_sqrt(2), (3,): Surd.rational(Fraction(1, 2))},
                          exact=True)
    assert coeff_norm_sq(h) == Surd.rational(Fraction(9, 4))


def test_hermite_expansion_rejects_complex_points():
    f = CoefficientVector.unit((1,))
    with pytest.raises(ValueError):
        eval_expansion(f, [1.0 + 1.0j])
