"""Exact scalars: rationals as ``Fraction`` and Gaussian rationals.

``ExactComplex`` stores its parts as Fractions for validation and printing;
its arithmetic runs on sympy's ``QQ_I`` elements.

``Rational`` is an annotated ``Fraction`` usable as a pydantic field type; it
accepts ints, Fractions, ``"p/q"`` strings and sympy QQ elements, refuses
floats, and serializes to its canonical string.
"""

from fractions import Fraction
from typing import Annotated, Any, Tuple

from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator
from sympy.polys.domains import QQ, QQ_I


def to_fraction(value: Any) -> Fraction:
    """
    Coerce a value to an exact Fraction.

    Raises:
        ValueError: For floats, bools and anything without an exact reading
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"inexact or non-numeric value {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise ValueError(f"not a rational literal: {value!r}")
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise ValueError(f"cannot read {value!r} as a rational number")


def format_rational(value: Fraction) -> str:
    return str(value)


Rational = Annotated[
    Fraction,
    PlainValidator(to_fraction),
    PlainSerializer(format_rational, return_type=str),
]


def rational_to_domain(value: Fraction) -> Any:
    return QQ(value.numerator, value.denominator)


class ExactComplex(BaseModel):
    """A Gaussian rational ``re + im*i``; equality is exact."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    re: Rational = Fraction(0)
    im: Rational = Fraction(0)

    @classmethod
    def of(cls, value: Any, im: Any = 0) -> "ExactComplex":
        """Build from an ExactComplex, rational-like value, or (re, im) pair."""
        if isinstance(value, ExactComplex):
            return value
        return cls(re=to_fraction(value), im=to_fraction(im))

    @classmethod
    def from_domain(cls, element: Any) -> "ExactComplex":
        """Convert a sympy QQ_I (or QQ) element."""
        if hasattr(element, "x") and hasattr(element, "y"):
            return cls(re=to_fraction(element.x), im=to_fraction(element.y))
        return cls(re=to_fraction(element))

    def to_domain(self) -> Any:
        return QQ_I(rational_to_domain(self.re), rational_to_domain(self.im))

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def sort_key(self) -> Tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(re=self.re, im=-self.im)

    def __add__(self, other: Any) -> "ExactComplex":
        return ExactComplex.from_domain(self.to_domain() + ExactComplex.of(other).to_domain())

    __radd__ = __add__

    def __neg__(self) -> "ExactComplex":
        return ExactComplex.from_domain(-self.to_domain())

    def __sub__(self, other: Any) -> "ExactComplex":
        return ExactComplex.from_domain(self.to_domain() - ExactComplex.of(other).to_domain())

    def __rsub__(self, other: Any) -> "ExactComplex":
        return ExactComplex.of(other) - self

    def __mul__(self, other: Any) -> "ExactComplex":
        return ExactComplex.from_domain(self.to_domain() * ExactComplex.of(other).to_domain())

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "ExactComplex":
        divisor = ExactComplex.of(other)
        if divisor.is_zero:
            raise ZeroDivisionError("division of a Gaussian rational by zero")
        return ExactComplex.from_domain(QQ_I.quo(self.to_domain(), divisor.to_domain()))

    def __str__(self) -> str:
        return format_complex(self)


def format_complex(value: ExactComplex) -> str:
    """Canonical ``a+b*i`` text; zero parts are omitted, ``0`` for zero."""
    if value.im == 0:
        return str(value.re)
    imaginary = f"{value.im}*i"
    if value.re == 0:
        return imaginary
    sign = "+" if value.im > 0 else ""
    return f"{value.re}{sign}{imaginary}"


ZERO = ExactComplex()
ONE = ExactComplex(re=Fraction(1))
HALF = Fraction(1, 2)
