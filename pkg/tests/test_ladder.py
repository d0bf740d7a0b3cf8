from fractions import Fraction

import pytest

from gaussfock import multiindex as mi
from gaussfock.basis import Basis, CoefficientVector, coeff_inner
from gaussfock.exact import Surd, exact_sqrt
from gaussfock.experiments import ladder_identity_failures
from gaussfock.ladder import (annihilate, bessel_potential, create, inverse_bessel,
                              lemma44_decompose, level_project, ou_apply, partial_alpha,
                              position, reconstruct, resolvent)

from conftest import unit


def vec(n, coeffs, basis=Basis.HERMITE):
    return CoefficientVector(n, basis, coeffs, exact=True)


def test_annihilate_examples():
    assert annihilate(0, unit((1,))) == unit((0,))
    assert annihilate(0, unit((0,))).coeffs == {}
    assert annihilate(0, unit((3,), Basis.FOCK)) == vec(1, {(2,): exact_sqrt(3)}, Basis.FOCK)


def test_create_examples():
    assert create(0, unit((0,), Basis.FOCK)) == unit((1,), Basis.FOCK)
    assert create(0, unit((1,))) == vec(1, {(2,): exact_sqrt(2)})
    assert create(1, unit((2, 0))) == unit((2, 1))


def test_position_examples():
    assert position(0, unit((0,))) == unit((1,))
    assert position(0, unit((1,))) == vec(1, {(2,): exact_sqrt(2), (0,): 1})


def test_partial_alpha_examples():
    assert partial_alpha((2,), unit((2,))) == vec(1, {(0,): exact_sqrt(2)})
    assert partial_alpha((1, 1), unit((1, 1), Basis.FOCK)) == unit((0, 0), Basis.FOCK)
    assert partial_alpha((3,), unit((2,))).coeffs == {}


def test_ou_examples():
    assert ou_apply(unit((0,))).coeffs == {}
    assert ou_apply(unit((2, 1))) == vec(2, {(2, 1): -3})
    for beta in mi.enumerate_up_to(2, 4):
        f = unit(beta)
        assert f - ou_apply(f) == f * (1 + sum(beta))


def test_ladder_identities_hold_exactly():
    assert ladder_identity_failures(6, (1, 2)) == {
        "adjointness": 0, "partial_composition": 0, "number_operator": 0,
        "resolvent_display": 0}


def test_adjointness_on_random_vectors(exact_family):
    for f in exact_family:
        g = f * Surd.rational(Fraction(1, 3)) + unit((0,) * f.dim)
        for j in range(f.dim):
            assert coeff_inner(create(j, f), g) == coeff_inner(f, annihilate(j, g))


def test_level_projection():
    f = unit((0,)) + unit((1,))
    assert level_project(0, f) == unit((0,))
    g = vec(2, {(0, 0): 1, (1, 0): 2, (1, 1): 3, (0, 3): 4})
    total = level_project(0, g)
    for k in range(1, 4):
        total = total + level_project(k, g)
    assert total == g
    assert level_project(1, level_project(2, g)).coeffs == {}


def test_bessel_potential():
    f = unit((2, 1))
    assert bessel_potential(2, f) == f * Surd.rational(Fraction(1, 4))
    assert bessel_potential(1, f) == vec(2, {(2, 1): Surd.rational(Fraction(1, 2))})
    assert bessel_potential(0, f) == f
    g = vec(1, {(0,): 1, (3,): 5, (5,): 7})
    assert bessel_potential(1, bessel_potential(3, g)) == bessel_potential(4, g)
    assert inverse_bessel(3, bessel_potential(3, g)) == g
    assert resolvent(g) == bessel_potential(2, g)
    fl = g.to_float()
    assert bessel_potential(0.5, bessel_potential(1.25, fl)).allclose(bessel_potential(1.75, fl))


@pytest.mark.parametrize("m", [0, 1, 2])
def test_lemma44_reconstruction_is_exact(exact_family, m):
    for g in exact_family:
        parts = lemma44_decompose(g, m)
        assert all(sum(a) <= m for a in parts)
        assert reconstruct(parts) == g


def test_axis_out_of_range():
    with pytest.raises(ValueError):
        annihilate(1, unit((1,)))
