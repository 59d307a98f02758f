"""Representation expressions for GL(n, R) and GL(n, C).

An expression is an ordered product of basic factors:

    chi(n,eps,z)        character of G_n
    stein(m,s;eps,t)    Stein complementary series of G_2m, twisted
    speh(m,k;t)         Speh representation of G_2m, twisted (R only)
    spehcs(m,k,s;t)     Speh complementary series of G_4m, twisted (R only)

joined by ``x``. The empty product is written ``triv`` and is the trivial
representation of G_0. Factor order is kept; ``grothendieck_equal`` compares
up to reordering.
"""

import logging
from collections import Counter
from fractions import Fraction
from typing import Annotated, Dict, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.errors import DomainError, ParseError
from src.parsing import TokenStream, read_complex
from src.partitions import Partition, induced_sum
from src.scalars import ZERO, ExactComplex, Rational
from src.schemas import ValidationIssue, ValidationReport

# Configure logging
logger = logging.getLogger(__name__)

FROZEN = ConfigDict(frozen=True, arbitrary_types_allowed=True)
FieldName = Literal["R", "C"]

TRIVIAL_LITERAL = "triv"
PRODUCT_SEPARATOR = "x"
S_RANGE = "s ∈ (0,1/2)"


class CharacterRep(BaseModel):
    model_config = FROZEN

    kind: Literal["chi"] = "chi"
    n: int = Field(..., ge=1, description="Group size")
    eps: int = Field(0, description="Sign datum: Z/2 over R, an integer over C")
    z: ExactComplex = ZERO

    @property
    def size(self) -> int:
        return self.n


class SteinRep(BaseModel):
    model_config = FROZEN

    kind: Literal["stein"] = "stein"
    m: int = Field(..., ge=1, description="Half of the group size")
    s: Rational
    eps: int = 0
    t: Rational = Fraction(0)

    @property
    def size(self) -> int:
        return 2 * self.m


class SpehRep(BaseModel):
    model_config = FROZEN

    kind: Literal["speh"] = "speh"
    m: int = Field(..., ge=1)
    k: int = Field(..., ge=1)
    t: Rational = Fraction(0)

    @property
    def size(self) -> int:
        return 2 * self.m


class SpehCSRep(BaseModel):
    model_config = FROZEN

    kind: Literal["spehcs"] = "spehcs"
    m: int = Field(..., ge=1, description="A quarter of the group size")
    k: int = Field(..., ge=1)
    s: Rational
    t: Rational = Fraction(0)

    @property
    def size(self) -> int:
        return 4 * self.m


BasicRep = Annotated[
    Union[CharacterRep, SteinRep, SpehRep, SpehCSRep],
    Field(discriminator="kind"),
]


class RepExpr(BaseModel):
    """Ordered product of basic factors over a fixed field."""

    model_config = FROZEN

    field: FieldName = "R"
    factors: Tuple[BasicRep, ...] = ()

    @property
    def n(self) -> int:
        return sum(factor.size for factor in self.factors)

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def __str__(self) -> str:
        return format_expression(self)


class ZeroRep(BaseModel):
    """The zero object: a derivative that vanishes."""

    model_config = FROZEN

    kind: Literal["zero"] = "zero"
    field: FieldName = "R"
    n: int = Field(0, ge=0, description="Nominal group size of the vanishing result")

    def __str__(self) -> str:
        return "0"


def character(n: int, eps: int = 0, z: object = 0) -> CharacterRep:
    return CharacterRep(n=n, eps=eps, z=ExactComplex.of(z))


def monomial(characters: List[CharacterRep], field: FieldName = "R") -> RepExpr:
    return RepExpr(field=field, factors=tuple(characters))


def is_monomial(expr: RepExpr) -> bool:
    return all(isinstance(factor, CharacterRep) for factor in expr.factors)


def validate(expr: RepExpr) -> ValidationReport:
    """
    Check every factor against the parameter ranges of its family.

    Args:
        expr: Expression to check

    Returns:
        ValidationReport listing each failing constraint (empty when valid)
    """
    issues: List[ValidationIssue] = []

    def report(index: int, factor: BaseModel, constraint: str, message: str) -> None:
        issues.append(ValidationIssue(
            factor_index=index,
            factor=format_factor(factor),
            constraint=constraint,
            message=message,
        ))

    for index, factor in enumerate(expr.factors):
        if expr.field == "C" and isinstance(factor, (SpehRep, SpehCSRep)):
            report(index, factor, "field C admits only chi and stein factors",
                   f"{factor.kind} factors only occur over R")
        if expr.field == "R" and isinstance(factor, (CharacterRep, SteinRep)) and factor.eps not in (0, 1):
            report(index, factor, "eps ∈ {0,1} over R",
                   f"sign datum {factor.eps} is not in Z/2")
        if isinstance(factor, (SteinRep, SpehCSRep)) and not (0 < factor.s < Fraction(1, 2)):
            report(index, factor, S_RANGE, f"s = {factor.s} lies outside (0,1/2)")

    return ValidationReport(
        expression=format_expression(expr),
        field=expr.field,
        valid=not issues,
        issues=issues,
    )


def require_valid(expr: RepExpr) -> None:
    """Raise DomainError with the first failing constraint, if any."""
    result = validate(expr)
    if not result.valid:
        issue = result.issues[0]
        raise DomainError(f"{issue.factor}: {issue.constraint} ({issue.message})")


def factor_partition(factor: BaseModel) -> Partition:
    if isinstance(factor, CharacterRep):
        return Partition.rectangle(1, factor.n)
    if isinstance(factor, (SteinRep, SpehRep)):
        return Partition.rectangle(2, factor.m)
    if isinstance(factor, SpehCSRep):
        return Partition.rectangle(4, factor.m)
    raise DomainError(f"not a basic factor: {factor!r}")


def associated_partition(expr: RepExpr) -> Partition:
    """Padded sum of the factors' rectangles 1^n, 2^m, 2^m and 4^m."""
    require_valid(expr)
    return induced_sum(factor_partition(factor) for factor in expr.factors)


def depth(expr: RepExpr) -> int:
    return associated_partition(expr).largest_part


def speh_presentations(m: int, k: int) -> Tuple[RepExpr, RepExpr]:
    """
    Degenerate principal series presenting the Speh representation of G_2m.

    Args:
        m: Half of the group size
        k: Speh parameter

    Returns:
        (quotient presentation, submodule presentation), both products of
        two characters of G_m
    """
    if m < 1 or k < 1:
        raise DomainError(f"speh_presentations needs m, k >= 1, got m={m}, k={k}")
    eps = (k + 1) % 2
    half = Fraction(k, 2)
    quotient = monomial([character(m, eps, -half), character(m, 0, half)])
    submodule = monomial([character(m, eps, half), character(m, 0, -half)])
    return quotient, submodule


def product(first: RepExpr, second: RepExpr) -> RepExpr:
    if first.field != second.field:
        raise DomainError(f"cannot multiply expressions over {first.field} and {second.field}")
    return RepExpr(field=first.field, factors=first.factors + second.factors)


def grothendieck_equal(first: RepExpr, second: RepExpr) -> bool:
    """Equality up to reordering the factors."""
    return first.field == second.field and Counter(first.factors) == Counter(second.factors)


# Grammar

PARAMETERS: Dict[str, Tuple[str, ...]] = {
    "chi": ("n", "eps", "z"),
    "stein": ("m", "s", "eps", "t"),
    "speh": ("m", "k", "t"),
    "spehcs": ("m", "k", "s", "t"),
}
REQUIRED: Dict[str, Tuple[str, ...]] = {
    "chi": ("n",),
    "stein": ("m", "s"),
    "speh": ("m", "k"),
    "spehcs": ("m", "k", "s"),
}
INTEGER_PARAMETERS = {"n", "m", "k", "eps"}
FACTOR_TYPES = {
    "chi": CharacterRep,
    "stein": SteinRep,
    "speh": SpehRep,
    "spehcs": SpehCSRep,
}


def parse_expression(text: str, field: FieldName = "R") -> RepExpr:
    """
    Parse an expression such as ``spehcs(2,k=3,s=1/4) x chi(3,0,2*i)``.

    Raises:
        ParseError: Malformed text, with position
        DomainError: Parameters of the wrong kind or out of their basic range
    """
    stream = TokenStream(text)
    factors: List[BaseModel] = []
    if stream.accept(TRIVIAL_LITERAL):
        stream.expect_end()
        return RepExpr(field=field)
    factors.append(_read_factor(stream))
    # after a closing parenthesis, "xchi(" is the separator glued to a factor
    while stream.accept(PRODUCT_SEPARATOR) or stream.accept_prefix(PRODUCT_SEPARATOR):
        factors.append(_read_factor(stream))
    stream.expect_end()
    return RepExpr(field=field, factors=tuple(factors))


def _read_factor(stream: TokenStream) -> BaseModel:
    head = stream.peek()
    if head.kind != "name" or head.text not in PARAMETERS:
        found = head.text or "end of input"
        raise ParseError(f"expected one of {', '.join(PARAMETERS)}, found {found!r}", head.pos)
    stream.next()
    kind = head.text
    names = PARAMETERS[kind]
    stream.expect("(")

    values: Dict[str, object] = {}
    positional = 0
    seen_keyword = False
    while True:
        token = stream.peek()
        if token.kind == "name" and stream.lookahead().text == "=":
            name = token.text
            if name not in names:
                raise ParseError(f"{kind} has no parameter {name!r}", token.pos)
            stream.next()
            stream.next()
            seen_keyword = True
        else:
            if seen_keyword:
                raise ParseError("positional argument after keyword argument", token.pos)
            if positional >= len(names):
                raise ParseError(f"too many arguments for {kind}", token.pos)
            name = names[positional]
            positional += 1
        if name in values:
            raise ParseError(f"parameter {name!r} given twice", token.pos)
        value_position = stream.peek().pos
        values[name] = _coerce(name, read_complex(stream), value_position)
        if stream.accept(",") or stream.accept(";"):
            continue
        stream.expect(")")
        break

    missing = [name for name in REQUIRED[kind] if name not in values]
    if missing:
        raise ParseError(f"{kind} is missing {', '.join(missing)}", head.pos)
    try:
        return FACTOR_TYPES[kind](**values)
    except ValidationError as e:
        error = e.errors()[0]
        location = ".".join(str(part) for part in error["loc"])
        raise DomainError(f"{kind}: {location}: {error['msg']} (position {head.pos})")


def _coerce(name: str, value: ExactComplex, position: int) -> object:
    if name == "z":
        return value
    if not value.is_real:
        raise ParseError(f"parameter {name!r} must be real", position)
    if name in INTEGER_PARAMETERS:
        if value.re.denominator != 1:
            raise ParseError(f"parameter {name!r} must be an integer", position)
        return int(value.re)
    return value.re


def format_factor(factor: BaseModel) -> str:
    if isinstance(factor, CharacterRep):
        return f"chi({factor.n},{factor.eps},{factor.z})"
    if isinstance(factor, SteinRep):
        twist = f";{factor.eps},{factor.t}" if factor.eps or factor.t else ""
        return f"stein({factor.m},{factor.s}{twist})"
    if isinstance(factor, SpehRep):
        twist = f";{factor.t}" if factor.t else ""
        return f"speh({factor.m},{factor.k}{twist})"
    if isinstance(factor, SpehCSRep):
        twist = f";{factor.t}" if factor.t else ""
        return f"spehcs({factor.m},{factor.k},{factor.s}{twist})"
    raise DomainError(f"not a basic factor: {factor!r}")


def format_expression(expr: Union[RepExpr, ZeroRep]) -> str:
    if isinstance(expr, ZeroRep):
        return str(expr)
    if not expr.factors:
        return TRIVIAL_LITERAL
    return f" {PRODUCT_SEPARATOR} ".join(format_factor(factor) for factor in expr.factors)
