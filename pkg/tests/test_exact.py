from fractions import Fraction

from hypothesis import given, strategies as st

from gaussfock.exact import I, Surd, exact_sqrt


def test_square_roots_square_exactly():
    for k in range(1, 30):
        r = exact_sqrt(k)
        assert r * r == Surd.rational(k)


def test_canonical_form():
    assert exact_sqrt(8) == exact_sqrt(2) * 2
    assert exact_sqrt(4) == Surd.rational(2)
    assert exact_sqrt(Fraction(1, 2)) == exact_sqrt(2) / 2
    assert (exact_sqrt(2) + exact_sqrt(3)).is_rational() is False
    assert (exact_sqrt(6) - exact_sqrt(2) * exact_sqrt(3)).is_zero()


def test_imaginary_unit():
    assert I * I == Surd.rational(-1)
    assert I ** 4 == Surd.rational(1)
    assert (I * exact_sqrt(2)).conjugate() == -I * exact_sqrt(2)
    assert (Surd.rational(3, 4)).abs2() == Surd.rational(25)


rat = st.fractions(max_denominator=20).filter(lambda q: abs(q) < 50)


@given(rat, rat, st.integers(1, 12))
def test_field_operations_match_floats(p, q, k):
    x = Surd.rational(p, q) + exact_sqrt(k)
    y = Surd.rational(q) * exact_sqrt(k) + 1
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-9 * (1 + abs(complex(x) * complex(y)))
    assert abs(complex(x + y) - (complex(x) + complex(y))) < 1e-9 * (1 + abs(complex(x + y)))
    assert x - x == Surd()
    assert hash(x + 0) == hash(x)
