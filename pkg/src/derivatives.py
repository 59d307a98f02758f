"""Derivatives, adduced representations and Whittaker multiplicities.

Everything here works on classification data: twist normalizations by powers
of |det| are absorbed, so results are the un-normalized expressions.
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, Iterable, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.errors import DomainError, UndeterminedError
from src.partitions import Composition, Partition, transpose
from src.reps import (
    CharacterRep,
    RepExpr,
    SpehCSRep,
    SpehRep,
    SteinRep,
    ZeroRep,
    associated_partition,
    character,
    depth,
    require_valid,
)
from src.scalars import HALF, ExactComplex

# Configure logging
logger = logging.getLogger(__name__)

Derivative = Union[RepExpr, ZeroRep]

ADDUCE_RULES = {
    "chi": "a character restricts to the character of the next smaller group",
    "stein": "a Stein complementary series loses one 2x2 layer",
    "speh": "a Speh representation loses one 2x2 layer",
    "spehcs": "a Speh complementary series loses one 4x4 layer",
}


class WhittakerDim(BaseModel):
    """Dimension of a degenerate Whittaker space: zero, one, or undetermined."""

    model_config = ConfigDict(frozen=True)

    value: Literal["zero", "one", "unknown"]
    reason: Optional[str] = Field(None, description="Which step decided (or failed to decide) the value")

    @classmethod
    def zero(cls, reason: str) -> "WhittakerDim":
        return cls(value="zero", reason=reason)

    @classmethod
    def one(cls) -> "WhittakerDim":
        return cls(value="one", reason="every part equals the running depth")

    @classmethod
    def unknown(cls, reason: str) -> "WhittakerDim":
        return cls(value="unknown", reason=reason)

    def __str__(self) -> str:
        return self.value


class InfCharMultiset(BaseModel):
    """Multiset of complex numbers, stored sorted so equality is multiset equality."""

    model_config = ConfigDict(frozen=True)

    elements: Tuple[ExactComplex, ...] = ()

    @field_validator("elements")
    @classmethod
    def _canonical_order(cls, elements: Tuple[ExactComplex, ...]) -> Tuple[ExactComplex, ...]:
        return tuple(sorted(elements, key=lambda value: value.sort_key()))

    @classmethod
    def of(cls, values: Iterable[object]) -> "InfCharMultiset":
        return cls(elements=tuple(ExactComplex.of(value) for value in values))

    def __str__(self) -> str:
        return "{" + ", ".join(str(value) for value in self.elements) + "}"


def derivative_monomial(expr: RepExpr, order: int) -> Derivative:
    """
    Apply E^order to a product of characters.

    Args:
        expr: Product of k characters (its depth is k)
        order: Derivative order; must equal k or exceed the depth

    Returns:
        The product of the restricted characters when order == k, the zero
        object when order > k

    Raises:
        DomainError: A non-character factor or a non-positive order
        UndeterminedError: 1 <= order < k
    """
    if order < 1:
        raise DomainError(f"derivative order must be positive, got {order}")
    for factor in expr.factors:
        if not isinstance(factor, CharacterRep):
            raise DomainError(f"derivative_monomial needs characters only, got a {factor.kind} factor")

    count = len(expr.factors)
    if order > count:
        return ZeroRep(field=expr.field, n=max(expr.n - order, 0))
    if order < count:
        raise UndeterminedError(
            f"E^{order} of a product of {count} characters is not determined; "
            f"only E^{count} and orders above {count} have a rule"
        )
    restricted = [
        factor.model_copy(update={"n": factor.n - 1})
        for factor in expr.factors
        if factor.n > 1
    ]
    return RepExpr(field=expr.field, factors=tuple(restricted))


def _adduce_factor(factor: BaseModel) -> Optional[BaseModel]:
    if isinstance(factor, CharacterRep):
        return factor.model_copy(update={"n": factor.n - 1}) if factor.n > 1 else None
    if isinstance(factor, (SteinRep, SpehRep, SpehCSRep)):
        return factor.model_copy(update={"m": factor.m - 1}) if factor.m > 1 else None
    raise DomainError(f"not a basic factor: {factor!r}")


def adduce(expr: RepExpr) -> RepExpr:
    """
    Adduced representation, computed factor by factor.

    Factors that shrink to size 0 are dropped, so the adduced representation
    of a single character of G_1 is the trivial representation of G_0.
    """
    require_valid(expr)
    factors = []
    for factor in expr.factors:
        adduced = _adduce_factor(factor)
        if adduced is not None:
            factors.append(adduced)
    return RepExpr(field=expr.field, factors=tuple(factors))


def highest_derivative(expr: RepExpr) -> RepExpr:
    """E^depth of the expression, which is its adduced representation."""
    result = adduce(expr)
    logger.info(f"Highest derivative of {expr} (depth {depth(expr)}) is {result}")
    return result


def _attached_characters(factor: BaseModel) -> List[CharacterRep]:
    if isinstance(factor, CharacterRep):
        return [factor]
    if isinstance(factor, SteinRep):
        return [
            character(factor.m, factor.eps, ExactComplex(re=factor.s, im=factor.t)),
            character(factor.m, factor.eps, ExactComplex(re=-factor.s, im=factor.t)),
        ]
    eps = (factor.k + 1) % 2
    half = Fraction(factor.k, 2)
    if isinstance(factor, SpehRep):
        return [
            character(factor.m, eps, ExactComplex(re=half, im=factor.t)),
            character(factor.m, 0, ExactComplex(re=-half, im=factor.t)),
        ]
    if isinstance(factor, SpehCSRep):
        return [
            character(factor.m, eps, ExactComplex(re=half + factor.s, im=factor.t)),
            character(factor.m, 0, ExactComplex(re=-half + factor.s, im=factor.t)),
            character(factor.m, eps, ExactComplex(re=half - factor.s, im=factor.t)),
            character(factor.m, 0, ExactComplex(re=-half - factor.s, im=factor.t)),
        ]
    raise DomainError(f"not a basic factor: {factor!r}")


def igeq(expr: RepExpr) -> RepExpr:
    """
    Monomial attached to an expression.

    Each factor is replaced by its characters, then the characters are sorted
    by non-ascending real part of z; ties keep attachment order.
    """
    require_valid(expr)
    characters: List[CharacterRep] = []
    for factor in expr.factors:
        characters.extend(_attached_characters(factor))
    characters.sort(key=lambda factor: -factor.z.re)
    return RepExpr(field=expr.field, factors=tuple(characters))


def monomial_presentation_consistent(expr: RepExpr) -> bool:
    """Sorted factor sizes of igeq(expr) equal the transpose of its associated partition."""
    sizes = Partition.from_parts(factor.n for factor in igeq(expr).factors)
    return sizes == transpose(associated_partition(expr))


def iterated_derivative(expr: RepExpr, parts: Composition) -> Derivative:
    """
    Apply E^{parts[0]}, then E^{parts[1]}, ... to a product of characters.

    Raises:
        DomainError: Size mismatch or non-character factors
        UndeterminedError: Some part falls strictly between 0 and the running factor count
    """
    if parts.n != expr.n:
        raise DomainError(f"composition of {parts.n} does not match group size {expr.n}")
    current: Derivative = expr
    for part in parts.parts:
        if isinstance(current, ZeroRep):
            break
        current = derivative_monomial(current, part)
    return current


def whittaker_dim(expr: RepExpr, parts: Composition) -> WhittakerDim:
    """
    Dimension of the degenerate Whittaker space of ``expr`` for the composition ``parts``.

    Parts are consumed first to last. A part above the running depth gives
    zero, a part equal to it replaces the representation by its adduced
    representation, and a part below it stops with an unknown verdict.

    Raises:
        DomainError: If the composition does not sum to the group size
    """
    require_valid(expr)
    if parts.n != expr.n:
        raise DomainError(f"composition {parts} sums to {parts.n}, expected {expr.n}")

    current = expr
    for step, part in enumerate(parts.parts, 1):
        current_depth = depth(current)
        if part > current_depth:
            return WhittakerDim.zero(
                f"part {part} at step {step} exceeds the depth {current_depth} of {current}; "
                f"derivatives above the depth vanish"
            )
        if part < current_depth:
            return WhittakerDim.unknown(
                f"part {part} at step {step} is below the depth {current_depth} of {current}; "
                f"sub-depth derivatives are not determined (it is open whether they keep "
                f"irreducible representations irreducible)"
            )
        current = adduce(current)
    return WhittakerDim.one()


def infchar_transform(multiset: InfCharMultiset, k: int) -> FrozenSet[InfCharMultiset]:
    """
    All multisets obtained by deleting k elements and adding 1/2 to the rest.

    Raises:
        DomainError: Unless 1 <= k <= size of the multiset
    """
    size = len(multiset.elements)
    if not 1 <= k <= size:
        raise DomainError(f"k must lie in [1, {size}], got {k}")
    results = set()
    for survivors in combinations(multiset.elements, size - k):
        results.add(InfCharMultiset.of(value + HALF for value in survivors))
    return frozenset(results)
