from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from instanton4.field import Field, FieldError, field_ops

P = 32003
ints = st.integers(min_value=-(10**9), max_value=10**9)


def test_inverse_mod_7():
    F = Field(7)
    assert F.inv(3) == 5
    assert field_ops(F.element(1), F.element(3), "inv") == 5


def test_rational_addition():
    Q = Field.rationals()
    assert field_ops(Q.element(Fraction(1, 2)), Q.element(Fraction(1, 3)), "add") == Fraction(5, 6)


def test_negation_mod_p():
    F = Field(P)
    assert F.neg(1) == 32002
    assert field_ops(F.element(1), None, "neg") == 32002


def test_lift_is_symmetric():
    F = Field(P)
    assert F.lift(32002) == -1
    assert F.lift(5) == 5


@pytest.mark.parametrize("p", [1, 4, 32001, 100])
def test_non_primes_rejected(p):
    with pytest.raises(FieldError):
        Field(p)


def test_characteristic_two_rejected():
    with pytest.raises(FieldError):
        Field(2)


def test_mixed_fields_rejected():
    with pytest.raises(FieldError):
        Field(7).element(1) + Field(11).element(1)


def test_fraction_with_p_in_denominator_rejected():
    with pytest.raises(FieldError):
        Field(7)("1/7")


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        Field(P).inv(0)


def test_json_roundtrip():
    for F in (Field(P), Field.rationals(), Field(7)):
        assert Field.from_json(F.to_json()) == F


@given(ints, ints, ints)
def test_prime_field_axioms(a, b, c):
    F = Field(P)
    x, y, z = F.element(a), F.element(b), F.element(c)
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_reduction_mod_p_is_a_homomorphism(a, b):
    F = Field(P)
    Q = Field.rationals()
    assert F(Q.add(a, b)) == F.add(F(a), F(b))
    assert F(Q.mul(a, b)) == F.mul(F(a), F(b))


@given(st.integers(min_value=0, max_value=P - 1))
def test_sqrt_of_squares(a):
    F = Field(P)
    sq = F.mul(a, a)
    r = F.sqrt(sq)
    assert r is not None and F.mul(r, r) == sq


def test_sqrt_of_nonresidue_is_none():
    F = Field(P)
    nonres = next(a for a in range(2, 100) if pow(a, (P - 1) // 2, P) == P - 1)
    assert F.sqrt(nonres) is None
    assert Field.rationals().sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert Field.rationals().sqrt(2) is None
