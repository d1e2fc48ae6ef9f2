from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strategies import small_fractions
from wsinglet.scalars import ExactScalar, as_fraction, frac_str, scalar_pair

scalars = st.builds(lambda a, b: ExactScalar(a, b, 3), small_fractions, small_fractions)


@given(scalars, scalars, scalars)
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    if y:
        assert (x / y) * y == x


@given(scalars)
def test_norm_is_multiplicative_with_conjugate(x):
    assert x * x.conjugate() == x.norm()


def test_sqrt_squares_to_2p():
    assert ExactScalar.sqrt2p(3) ** 2 == 6
    assert ExactScalar.sqrt2p(3) ** -2 == Fraction(1, 6)


def test_square_2p_folds():
    s = ExactScalar.sqrt2p(2)
    assert s.is_rational and s == 2
    assert ExactScalar.lambda_p(2) == Fraction(1, 2)


def test_lambda_squared():
    assert ExactScalar.lambda_p(3) ** 2 == Fraction(2, 3)


def test_mixed_fields_rejected():
    with pytest.raises(ValueError):
        ExactScalar(0, 1, 3) + ExactScalar(0, 1, 5)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ExactScalar(1, 0, 3) / ExactScalar(0, 0, 3)


def test_irrational_to_fraction():
    with pytest.raises(ValueError):
        as_fraction(ExactScalar.sqrt2p(3))


def test_hash_agrees_with_fraction():
    assert hash(ExactScalar(Fraction(1, 3), 0, 3)) == hash(Fraction(1, 3))


def test_serialization():
    assert frac_str(3) == "3/1"
    assert scalar_pair(ExactScalar(1, Fraction(1, 2), 3)) == ["1/1", "1/2"]
    assert scalar_pair(Fraction(-2, 5)) == ["-2/5", "0/1"]
    assert str(ExactScalar(0, 2, 3)) == "2*sqrt(6)"
