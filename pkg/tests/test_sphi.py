import math

import numpy as np
import pytest

from gaussfock.basis import Basis, CoefficientVector, eval_expansion, evaluator, fock_table
from gaussfock.experiments import random_decaying_vector
from gaussfock.multipliers import galerkin_multiplier
from gaussfock.quadrature import lambda_rule
from gaussfock.sphi import (PreconditionError, calibrate_normalization, commutation_check,
                            expected_kappa, factored_matrix, invertibility_check,
                            phi_from_symbol, sphi_direct, sphi_direct_matrix, sphi_factored)
from gaussfock.symbols import SmoothSymbol
from gaussfock.transforms import weyl_coeff, weyl_eval

KAPPA1 = expected_kappa(1)


def sym(text, order=0):
    return SmoothSymbol.from_expr(text, 1, order)


@pytest.fixture(scope="module")
def kappa1():
    return calibrate_normalization(1)


def test_calibration_n1(kappa1):
    assert abs(kappa1["kappa"] - math.sqrt(2 / math.pi)) < 1e-6
    assert kappa1["spread"] < 1e-6


def test_calibration_n2():
    cal = calibrate_normalization(2)
    assert abs(cal["kappa"] - 2 / math.pi) < 1e-6


def test_phi_examples():
    z = np.array([[0.3 + 0.2j], [-1.0 + 0.5j], [1.5 - 1.0j]])
    one = sym("1")
    assert np.max(np.abs(phi_from_symbol(one, z, 1, kappa=KAPPA1) - 1)) < 1e-12
    for a in (0.5, 1.0, 2.0):
        got = phi_from_symbol(SmoothSymbol.plane_wave([a], order=0), z, 1, kappa=KAPPA1)
        assert np.max(np.abs(got - np.exp(a * z[:, 0] - a * a / 2))) < 1e-10
    v = phi_from_symbol(sym("cos(x) + x^2"), [0.0], 1, kappa=KAPPA1)
    assert abs(v.imag) < 1e-14
    z2 = np.array([[0.2 + 0.1j, -0.4j]])
    assert abs(phi_from_symbol(SmoothSymbol.constant(1, 2, 0), z2, 2, count=20,
                               kappa=expected_kappa(2))[0] - 1) < 1e-12


def test_direct_route_reproducing_property():
    rule = lambda_rule(20)
    Z = np.array([[0.4 + 0.3j], [-0.5 - 0.2j]])
    ones = lambda p: np.ones(len(p))
    for b in range(4):
        f = lambda w, b=b: fock_table([(b,)], w)[0]
        assert np.max(np.abs(sphi_direct(ones, f, Z, rule) - f(Z))) < 1e-8
    phi = lambda p: phi_from_symbol(sym("1"), p, 1, 24, KAPPA1)
    for b in range(4):
        f = lambda w, b=b: fock_table([(b,)], w)[0]
        assert np.max(np.abs(sphi_direct(phi, f, Z, rule) - f(Z))) < 1e-7
    assert np.max(np.abs(sphi_direct(ones, lambda w: np.zeros(len(w)), Z, rule))) == 0


@pytest.mark.parametrize("text", ["1", "exp(-I*x)", "sin(x)", "exp(-x^2)"])
def test_routes_agree(text, kappa1):
    u = sym(text)
    T = galerkin_multiplier(u, 6)
    D = sphi_direct_matrix(u, 6, kappa1["kappa"])
    assert np.max(np.abs(D - factored_matrix(T))) < 1e-5


def test_factored_identity(rng):
    f = random_decaying_vector(rng, 2, 3, Basis.FOCK)
    out = sphi_factored(SmoothSymbol.constant(1, 2, 0), f, 5)
    assert out.vector.allclose(f, atol=1e-12) and out.degree == 5
    with pytest.raises(ValueError):
        sphi_factored(SmoothSymbol.constant(1, 2, 0), f, 2)
    with pytest.raises(ValueError):
        sphi_factored(SmoothSymbol.constant(1, 2, 0), f.retag(Basis.HERMITE), 5)


@pytest.mark.parametrize("a", [[0.5], [-2.0], [1.0, -1.0]])
def test_factored_plane_wave_is_weyl(a, rng):
    f = random_decaying_vector(rng, len(a), 3, Basis.FOCK, rate=1.0)
    N = 30 if len(a) == 1 else 24
    out = sphi_factored(SmoothSymbol.plane_wave(a, order=0), f, N)
    w = weyl_coeff(a, f, N)
    keys = set(out.vector.coeffs) | set(w.vector.coeffs)
    assert max(abs(out.vector[b] - w.vector[b]) for b in keys) < 1e-6
    Z = np.array([[0.3 + 0.1j] * len(a), [-0.5j] * len(a)])
    assert np.max(np.abs(eval_expansion(out.vector, Z) - weyl_eval(a, evaluator(f), Z))) < 1e-6


def test_commutation():
    sin, wave = sym("sin(x)"), sym("exp(-I*x)")
    assert commutation_check(SmoothSymbol.constant(1, 1, 0), sin, 6) < 1e-12
    res = [commutation_check(sin, wave, N) for N in (4, 6, 8, 10)]
    assert all(b < a for a, b in zip(res, res[1:]))
    assert abs(commutation_check(wave, sin, 6) - res[1]) < 1e-14
    b = SmoothSymbol.plane_wave([0.7], order=0)
    decay = [commutation_check(b, wave, N) for N in (4, 6, 8)]
    assert decay[1] <= decay[0] / 2 and decay[2] <= decay[1] / 2


def test_invertibility():
    assert invertibility_check(SmoothSymbol.constant(2, 1, 0), 4) < 1e-12
    u = sym("2 + sin(x)")
    res = [invertibility_check(u, N) for N in (4, 6, 8, 10)]
    assert all(b < a for a, b in zip(res, res[1:]))
    assert res[-1] <= 1e-3
    with pytest.raises(PreconditionError):
        invertibility_check(sym("sin(x)"), 6)


def test_direct_matrix_is_one_dimensional_only():
    with pytest.raises(ValueError):
        sphi_direct_matrix(SmoothSymbol.constant(1, 2, 0), 2, 1.0)


def test_factored_degree_zero():
    e0 = CoefficientVector.unit((0,), Basis.FOCK)
    assert sphi_factored(sym("1"), e0, 0).vector.allclose(e0)
