import math

import numpy as np
import pytest

from gaussfock import multiindex as mi
from gaussfock.basis import Basis, eval_expansion, fock_table, hermite_table, hermite_tilde_table
from gaussfock.exact import I
from gaussfock.experiments import random_decaying_vector
from gaussfock.norms import fock_sobolev_norm, gauss_sobolev_norm
from gaussfock.quadrature import (QuadratureResidualError, conjugate_kernel_rule, gamma_rule,
                                  lambda_rule, lebesgue_rule)
from gaussfock.transforms import (bargmann_integral, dilate_half, fock_project,
                                  gauss_bargmann_coeff, gauss_bargmann_integral,
                                  gaussian_weight_mult, inverse_gauss_bargmann_coeff,
                                  inverse_gauss_bargmann_integral, rotate_i,
                                  verify_prop22, verify_translation_identity, weyl_coeff,
                                  weyl_eval)

from conftest import unit


def disk(rng, count, n, radius):
    r = radius * np.sqrt(rng.uniform(size=(count, n)))
    return r * np.exp(2j * np.pi * rng.uniform(size=(count, n)))


def h(beta):
    return lambda x: hermite_table([beta], x)[0]


def e(beta):
    return lambda z: fock_table([beta], z)[0]


def test_coefficient_forms_are_exact_isometries(exact_family):
    for f in exact_family:
        g = gauss_bargmann_coeff(f)
        assert g.basis is Basis.FOCK and g.coeffs == f.coeffs
        assert inverse_gauss_bargmann_coeff(g) == f
        for m in range(4):
            assert fock_sobolev_norm(g, m) == gauss_sobolev_norm(f, m)


def test_g_integral_reproduces_fock_basis(rng):
    Z = disk(rng, 20, 1, 2.0)
    rule = gamma_rule(24)
    assert np.max(np.abs(gauss_bargmann_integral(h((0,)), Z, rule) - 1)) < 1e-12
    for b in range(6):
        assert np.max(np.abs(gauss_bargmann_integral(h((b,)), Z, rule) - e((b,))(Z))) < 1e-8
    Z2 = disk(rng, 10, 2, 1.4)
    rule2 = gamma_rule(16, 2)
    for beta in mi.enumerate_up_to(2, 4):
        assert np.max(np.abs(gauss_bargmann_integral(h(beta), Z2, rule2) - e(beta)(Z2))) < 1e-8
    f = lambda x: h((1,))(x) + h((2,))(x)
    assert np.max(np.abs(gauss_bargmann_integral(f, Z, rule)
                         - e((1,))(Z) - e((2,))(Z))) < 1e-8


def test_shifted_and_real_axis_forms_agree(rng):
    Z = disk(rng, 15, 1, 2.0)
    rule = gamma_rule(24)
    for b in range(5):
        plain = gauss_bargmann_integral(h((b,)), Z, rule)
        shifted = gauss_bargmann_integral(h((b,)), Z, rule, shifted=True)
        assert np.max(np.abs(plain - shifted)) < 1e-8


@pytest.mark.parametrize("rule", [lambda_rule(40), conjugate_kernel_rule(32), gamma_rule(24)],
                         ids=["lambda", "lambda-conj", "contour"])
def test_inverse_g_integral(rule):
    X = np.linspace(-2, 2, 9)[:, None]
    assert np.max(np.abs(inverse_gauss_bargmann_integral(e((0,)), X, rule) - 1)) < 1e-10
    for b in range(5):
        got = inverse_gauss_bargmann_integral(e((b,)), X, rule)
        assert np.max(np.abs(got - h((b,))(X))) < 1e-7


def test_round_trip(rng):
    gam = gamma_rule(24)
    X = np.linspace(-2, 2, 9)[:, None]
    f = random_decaying_vector(rng, 1, 5)
    fx = lambda x: eval_expansion_complex(f, x)
    back = inverse_gauss_bargmann_integral(
        lambda z: gauss_bargmann_integral(fx, z, gam, shifted=True), X, gam)
    assert np.max(np.abs(back - eval_expansion(f, X))) < 1e-7


def eval_expansion_complex(f, x):
    idx = list(f.coeffs)
    return np.array([complex(f.coeffs[b]) for b in idx]) @ hermite_table(idx, x)


def test_bargmann_examples(rng):
    Z = disk(rng, 20, 1, 2.0)
    dx = lebesgue_rule(24, 1, 0.5)
    tilde = lambda b: (lambda x: hermite_tilde_table([(b,)], x)[0])
    assert np.max(np.abs(bargmann_integral(tilde(0), Z, dx) - 1)) < 1e-8
    for b in range(5):
        assert np.max(np.abs(bargmann_integral(tilde(b), Z, dx) - e((b,))(Z))) < 1e-7
    assert np.max(np.abs(bargmann_integral(lambda x: np.zeros(len(x)), Z, dx))) == 0


def test_prop22(rng):
    Z = disk(rng, 20, 1, 2.0)
    gam, dx = gamma_rule(24), lebesgue_rule(24, 1, 0.5)
    assert verify_prop22(lambda x: hermite_tilde_table([(0,)], x)[0], Z, gam, dx) <= 1e-8
    assert verify_prop22(lambda x: hermite_tilde_table([(2,)], x)[0], Z, gam, dx) <= 1e-7
    assert verify_prop22(lambda x: np.zeros(len(x)), Z, gam, dx) == 0


def test_dilation_and_weight():
    x = np.array([[0.0], [1.0], [-3.0]])
    assert np.allclose(dilate_half(lambda p: p[:, 0])(x), x[:, 0] / 2)
    assert np.allclose(dilate_half(dilate_half(lambda p: p[:, 0]))(x), x[:, 0] / 4)
    f = lambda p: np.cos(p[:, 0])
    back = gaussian_weight_mult(gaussian_weight_mult(f), inverse=True)(x)
    assert np.allclose(back, f(x), atol=1e-15)


def test_gaussian_weight_mult_value_at_origin():
    one = lambda p: np.ones(len(np.atleast_2d(p)))
    for n in (1, 2):
        assert gaussian_weight_mult(one)(np.zeros((1, n)))[0] == pytest.approx(
            (math.pi / 2) ** (n / 4))


def test_fock_projection():
    rule = lambda_rule(20)
    z = np.array([[0.3 + 0.4j], [1 + 1j], [-0.5j]])
    for b in range(5):
        assert np.max(np.abs(fock_project(e((b,)), z, rule) - e((b,))(z))) < 1e-8
    assert np.max(np.abs(fock_project(lambda w: np.conj(w[:, 0]), z, rule))) < 1e-12
    assert np.max(np.abs(fock_project(lambda w: np.ones(len(w)), z, rule) - 1)) < 1e-12


def test_rotations(exact_family):
    for f in exact_family:
        g = f.retag(Basis.FOCK)
        assert rotate_i(rotate_i(g, -1), 1) == g
        for m in range(3):
            assert fock_sobolev_norm(rotate_i(g, 1), m) == pytest.approx(fock_sobolev_norm(g, m))
    assert rotate_i(unit((2, 1), Basis.FOCK), 1) == unit((2, 1), Basis.FOCK) * (I * I * I)
    with pytest.raises(ValueError):
        rotate_i(unit((1,)), 1)


def test_weyl_eval_examples(rng):
    Z = disk(rng, 10, 2, 2.0)
    f = lambda z: z[:, 0] ** 2 - 3 * z[:, 1]
    assert np.allclose(weyl_eval([0, 0], f, Z), f(Z))
    b = np.array([0.7, -1.3])
    assert np.allclose(weyl_eval(-b, lambda z: weyl_eval(b, f, z), Z), f(Z), atol=1e-13)
    one = lambda z: np.ones(len(z))
    assert weyl_eval(b, one, b.astype(complex)) == pytest.approx(math.exp(b @ b / 2))


def test_weyl_coeff_of_vacuum():
    b = np.array([1.5])
    res = weyl_coeff(b, unit((0,), Basis.FOCK, exact=False), 60)
    for k in range(10):
        ref = math.exp(-b @ b / 2) * b[0] ** k / math.sqrt(math.factorial(k))
        assert abs(res.vector[(k,)] - ref) < 1e-14
    norm_sq = sum(abs(c) ** 2 for _, c in res.vector.items()) + res.residual ** 2
    assert norm_sq == pytest.approx(1.0, abs=1e-13)
    assert res.residual < 1e-10
    zero = weyl_coeff([0.0], unit((3,), Basis.FOCK, exact=False), 3)
    assert zero.vector.allclose(unit((3,), Basis.FOCK, exact=False)) and zero.residual == 0


def test_weyl_coeff_matches_pointwise_and_is_unitary(rng):
    f = random_decaying_vector(rng, 2, 4, Basis.FOCK)
    b = np.array([0.8, -0.5])
    res = weyl_coeff(b, f, 40)
    Z = disk(rng, 8, 2, 1.5)
    direct = weyl_eval(b, lambda z: eval_expansion(f, z), Z)
    assert np.max(np.abs(eval_expansion(res.vector, Z) - direct)) < 1e-10
    before = sum(abs(c) ** 2 for _, c in f.items())
    after = sum(abs(c) ** 2 for _, c in res.vector.items())
    assert after == pytest.approx(before, rel=1e-12)
    norms = [sum(abs(c) ** 2 for _, c in weyl_coeff(b, f, N).vector.items()) for N in (5, 10, 20)]
    assert norms[0] < norms[1] < norms[2] <= before * (1 + 1e-12)


def test_weyl_coeff_tolerance_error():
    with pytest.raises(QuadratureResidualError):
        weyl_coeff([3.0], unit((0,), Basis.FOCK, exact=False), 4, tol=1e-6)


def test_translation_identity(rng):
    gam = gamma_rule(16)
    xs = rng.uniform(-2, 2, (20, 1))
    assert verify_translation_identity([0.0], h((2,)), xs, gam, gam) < 1e-12
    assert verify_translation_identity([1.0], h((0,)), xs, gam, gam) <= 1e-7
    gam2 = gamma_rule(16, 2)
    xs2 = rng.uniform(-2, 2, (20, 2))
    assert verify_translation_identity([1.0, -1.0], h((1, 0)), xs2, gam2, gam2) <= 1e-6
