from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bqg.scalars import FieldSpec, cyclotomic_polynomial, order_of, root_of_unity, scalar_arith, to_literal

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10**6)


def elements(conductor):
    F = FieldSpec(conductor)
    return st.lists(rationals, min_size=F.degree, max_size=F.degree).map(F.element)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert len(cyclotomic_polynomial(12)) - 1 == 4


def test_field_is_interned():
    assert FieldSpec(5) is FieldSpec(5)
    with pytest.raises(ValueError):
        FieldSpec(0)


def test_zeta4_squared():
    F = FieldSpec(4)
    z = F.zeta()
    assert scalar_arith(z, z, "mul") == F.element([-1])
    assert scalar_arith(F.one() + z, F.one() - z, "mul") == F.element([2])


def test_zeta3_inverse():
    F = FieldSpec(3)
    z = F.zeta()
    assert scalar_arith(F.one(), z, "div") == F.element([-1, -1])
    assert z * z == F.element([-1, -1])


def test_roots_of_unity():
    assert root_of_unity(FieldSpec(1), 0) == FieldSpec(1).one()
    assert root_of_unity(FieldSpec(2), 1) == FieldSpec(2).element([-1])
    F = FieldSpec(4)
    assert root_of_unity(F, 3) == -F.zeta()
    assert order_of(FieldSpec(6).zeta()) == 6
    assert order_of(FieldSpec(6).zeta(2)) == 3


def test_int_division_is_exact():
    assert scalar_arith(1, 3, "div") == Fraction(1, 3)
    assert isinstance(scalar_arith(1, 3, "div"), Fraction)


def test_literals():
    F = FieldSpec(3)
    assert F.from_literal("1/2,-3") == F.element([Fraction(1, 2), -3])
    assert FieldSpec(1).from_literal("7/3") == Fraction(7, 3)
    assert to_literal(Fraction(-2, 5)) == "-2/5"
    with pytest.raises(ValueError):
        F.from_literal("1,,2")
    with pytest.raises(ValueError):
        F.from_literal("abc")


@pytest.mark.parametrize("conductor", [3, 4, 5, 8])
def test_zeta_power_is_one(conductor):
    F = FieldSpec(conductor)
    z = F.zeta()
    acc = F.one()
    for _ in range(conductor):
        acc = acc * z
    assert acc == F.one()


@settings(max_examples=60, deadline=None)
@given(elements(5), elements(5), elements(5))
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(elements(7))
def test_inverse(a):
    if a == FieldSpec(7).zero():
        return
    assert a * a.inverse() == FieldSpec(7).one()


@settings(max_examples=60, deadline=None)
@given(elements(3))
def test_literal_roundtrip(a):
    assert FieldSpec(3).from_literal(a.to_literal()) == a


def test_mixing_fields_fails():
    with pytest.raises(ValueError):
        FieldSpec(3).zeta() + FieldSpec(4).zeta()
