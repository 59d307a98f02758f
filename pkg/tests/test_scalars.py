from fractions import Fraction

import pytest
from sympy.polys.domains import QQ, QQ_I

from src.scalars import ExactComplex, format_complex, to_fraction


def test_arithmetic_matches_gaussian_rationals():
    a = ExactComplex.of(Fraction(1, 2), 3)
    b = ExactComplex.of(-2, Fraction(1, 3))
    assert (a + b).to_domain() == a.to_domain() + b.to_domain()
    assert (a * b).to_domain() == a.to_domain() * b.to_domain()
    assert a - b == ExactComplex.of(Fraction(5, 2), Fraction(8, 3))
    assert a * b == ExactComplex.of(-2, Fraction(-35, 6))
    assert (a * b) / b == a


def test_mixed_operands():
    i = ExactComplex.of(0, 1)
    assert i * i == ExactComplex.of(-1)
    assert 1 - i == ExactComplex.of(1, -1)
    assert Fraction(1, 2) + i == ExactComplex.of(Fraction(1, 2), 1)
    assert 2 * i == ExactComplex.of(0, 2)
    assert -i == i.conjugate()


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ExactComplex.of(1) / 0


def test_domain_round_trip():
    element = QQ_I(QQ(1, 2), QQ(-3, 4))
    assert ExactComplex.from_domain(element).to_domain() == element
    assert ExactComplex.from_domain(QQ(5, 7)) == ExactComplex.of(Fraction(5, 7))


@pytest.mark.parametrize("value, text", [
    (ExactComplex.of(0), "0"),
    (ExactComplex.of(Fraction(-1, 2)), "-1/2"),
    (ExactComplex.of(0, -1), "-1*i"),
    (ExactComplex.of(Fraction(1, 2), 1), "1/2+1*i"),
    (ExactComplex.of(1, Fraction(-2, 3)), "1-2/3*i"),
])
def test_format_complex(value, text):
    assert format_complex(value) == text


@pytest.mark.parametrize("value", [0.5, True, "one"])
def test_to_fraction_refuses_inexact_values(value):
    with pytest.raises(ValueError):
        to_fraction(value)
