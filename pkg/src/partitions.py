"""Partitions and compositions.

Partitions label nilpotent orbits in gl(n) and compositions label block
parabolics. Both are frozen pydantic models so they hash, compare exactly and
serialize as plain integer lists.
"""

import logging
from itertools import groupby
from typing import Iterable, Iterator, List, Tuple

from pydantic import BaseModel, ConfigDict, field_validator
from sympy.utilities.iterables import partitions as sympy_partitions

from src.errors import DomainError, ParseError
from src.parsing import TokenStream

# Configure logging
logger = logging.getLogger(__name__)


class Composition(BaseModel):
    """An ordered tuple of positive integers."""

    model_config = ConfigDict(frozen=True)

    parts: Tuple[int, ...] = ()

    @field_validator("parts")
    @classmethod
    def _positive_parts(cls, parts: Tuple[int, ...]) -> Tuple[int, ...]:
        for part in parts:
            if part < 1:
                raise ValueError(f"parts must be positive, got {part}")
        return parts

    @classmethod
    def of(cls, *parts: int) -> "Composition":
        return cls(parts=tuple(parts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __getitem__(self, index: int) -> int:
        return self.parts[index]

    def sorted(self) -> "Partition":
        return Partition.from_parts(self.parts)

    def __str__(self) -> str:
        return ",".join(str(part) for part in self.parts)


class Partition(Composition):
    """A non-increasing composition."""

    @field_validator("parts")
    @classmethod
    def _non_increasing(cls, parts: Tuple[int, ...]) -> Tuple[int, ...]:
        for left, right in zip(parts, parts[1:]):
            if right > left:
                raise ValueError(f"parts must be non-increasing, got {parts}")
        return parts

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        return cls(parts=tuple(sorted(parts, reverse=True)))

    @classmethod
    def rectangle(cls, width: int, height: int) -> "Partition":
        """``width^height``: ``height`` rows of length ``width``."""
        if width == 0 or height == 0:
            return cls()
        return cls(parts=(width,) * height)

    @property
    def largest_part(self) -> int:
        return self.parts[0] if self.parts else 0

    def tail(self) -> "Partition":
        return Partition(parts=self.parts[1:])

    def __str__(self) -> str:
        return format_exponential(self)


def parse_exponential(text: str) -> Partition:
    """
    Parse ``4^2 2^1 1^3`` or a comma list like ``3,1,2`` into a partition.

    Args:
        text: Parts separated by whitespace or commas, each optionally ``base^exp``

    Returns:
        The denoted partition sorted non-increasing

    Raises:
        ParseError: Malformed text, with the offending position
        DomainError: A zero base or exponent
    """
    return Partition.from_parts(_read_parts(text))


def parse_composition(text: str) -> Composition:
    """Same grammar as parse_exponential, keeping the written order."""
    return Composition(parts=tuple(_read_parts(text)))


def _read_parts(text: str) -> List[int]:
    stream = TokenStream(text)
    parts: List[int] = []
    if stream.accept("("):
        stream.expect(")")
        stream.expect_end()
        return parts
    while stream.peek().kind != "end":
        position = stream.peek().pos
        base = stream.integer()
        exponent = 1
        if stream.accept("^"):
            exponent_position = stream.peek().pos
            exponent = stream.integer()
            if exponent == 0:
                raise DomainError(f"exponent must be positive (position {exponent_position})")
        if base == 0:
            raise DomainError(f"part must be positive (position {position})")
        parts.extend([base] * exponent)
        if stream.accept(","):
            if stream.peek().kind == "end":
                raise ParseError("dangling ','", stream.peek().pos)
    if not parts:
        raise ParseError("empty partition literal; write () for the empty partition", 0)
    return parts


def format_exponential(partition: Partition) -> str:
    """Descending bases, ``^1`` omitted: (4,4,2,1,1,1) -> ``4^2 2 1^3``."""
    if not partition.parts:
        return "()"
    words = []
    for base, run in groupby(partition.parts):
        count = len(list(run))
        words.append(str(base) if count == 1 else f"{base}^{count}")
    return " ".join(words)


def transpose(partition: Partition) -> Partition:
    """Column lengths of the Young diagram."""
    if not partition.parts:
        return Partition()
    return Partition(parts=tuple(
        sum(1 for part in partition.parts if part >= j)
        for j in range(1, partition.largest_part + 1)
    ))


def induced_sum(partitions: Iterable[Partition]) -> Partition:
    """Componentwise sum after padding with zeros (rows of the induced orbit)."""
    rows: List[int] = []
    for partition in partitions:
        for index, part in enumerate(partition.parts):
            if index < len(rows):
                rows[index] += part
            else:
                rows.append(part)
    return Partition(parts=tuple(rows))


def dominance_leq(first: Partition, second: Partition) -> bool:
    """
    Dominance order: every prefix sum of ``first`` is at most that of ``second``.

    Raises:
        DomainError: If the partitions have different sizes
    """
    if first.n != second.n:
        raise DomainError(f"dominance compares partitions of one n, got {first.n} and {second.n}")
    left_total = 0
    right_total = 0
    for index in range(max(len(first.parts), len(second.parts))):
        left_total += first.parts[index] if index < len(first.parts) else 0
        right_total += second.parts[index] if index < len(second.parts) else 0
        if left_total > right_total:
            return False
    return True


def partitions_of(n: int) -> Iterator[Partition]:
    """All partitions of n (the empty partition when n == 0)."""
    if n < 0:
        raise DomainError(f"cannot partition a negative number: {n}")
    if n == 0:
        yield Partition()
        return
    for multiplicities in sympy_partitions(n):
        yield Partition.from_parts(
            part for part, count in multiplicities.items() for _ in range(count)
        )
