"""Filtrations by explicit subspaces of Q^N.

A chain F^0 ⊆ F^1 ⊆ ... ⊆ F^{L-1} is stored step by step; ``at(i)`` reads 0
for i < 0 and the top step for i >= L. Subspaces keep a reduced row echelon
basis, so equal subspaces compare equal.
"""

import logging
import random
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from src.errors import DomainError, ParseError
from src.parsing import parse_rational
from src.scalars import Rational, rational_to_domain, to_fraction
from src.schemas import FiltrationSuiteReport, ShiftLemmaReport

# Configure logging
logger = logging.getLogger(__name__)

# Constants
RANDOM_COEFFICIENT_BOUND = 3
MAX_RANDOM_STEPS = 6
CHAIN_HEADER = "dim"
STEP_SEPARATOR = "---"

Vector = Tuple[Fraction, ...]


def _echelon(ambient_dim: int, vectors: Sequence[Sequence[object]]) -> Tuple[Vector, ...]:
    rows = [list(vector) for vector in vectors]
    for row in rows:
        if len(row) != ambient_dim:
            raise DomainError(f"vector of length {len(row)} in an ambient space of dimension {ambient_dim}")
    if not rows:
        return ()
    matrix = DomainMatrix(
        [[rational_to_domain(to_fraction(value)) for value in row] for row in rows],
        (len(rows), ambient_dim),
        QQ,
    )
    reduced, pivots = matrix.rref()
    return tuple(
        tuple(to_fraction(value) for value in row)
        for row in reduced.to_list()[:len(pivots)]
    )


class Subspace(BaseModel):
    """Row span of a reduced echelon basis inside Q^ambient_dim."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ambient_dim: int = Field(..., ge=1)
    basis: Tuple[Tuple[Rational, ...], ...] = ()

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence[object]] = ()) -> "Subspace":
        return cls.model_construct(ambient_dim=ambient_dim, basis=_echelon(ambient_dim, list(vectors)))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls.model_construct(ambient_dim=ambient_dim, basis=())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        rows = [[1 if i == j else 0 for j in range(ambient_dim)] for i in range(ambient_dim)]
        return cls.span(ambient_dim, rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _same_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DomainError(f"ambient dimensions differ: {self.ambient_dim} and {other.ambient_dim}")

    def sum(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        return Subspace.span(self.ambient_dim, self.basis + other.basis)

    def contains(self, other: "Subspace") -> bool:
        """True iff ``other`` is a subspace of ``self``."""
        return self.sum(other).dim == self.dim

    def intersection_dim(self, other: "Subspace") -> int:
        return self.dim + other.dim - self.sum(other).dim

    def __str__(self) -> str:
        rows = ["[" + " ".join(str(value) for value in row) + "]" for row in self.basis]
        return "<" + ", ".join(rows) + ">"


class FiltrationChain(BaseModel):
    """Nondecreasing chain of subspaces with a stable top."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ambient_dim: int = Field(..., ge=1)
    steps: Tuple[Subspace, ...]

    @classmethod
    def of(cls, ambient_dim: int, steps: Iterable[Subspace]) -> "FiltrationChain":
        """
        Build a chain from its steps.

        Raises:
            DomainError: Empty chain, wrong ambient space, or a step not contained in the next
        """
        steps = tuple(steps)
        if not steps:
            raise DomainError("a filtration needs at least one step")
        for index, step in enumerate(steps):
            if step.ambient_dim != ambient_dim:
                raise DomainError(f"step {index} lives in Q^{step.ambient_dim}, expected Q^{ambient_dim}")
        for index in range(len(steps) - 1):
            if not steps[index + 1].contains(steps[index]):
                raise DomainError(f"step {index} is not contained in step {index + 1}")
        return cls(ambient_dim=ambient_dim, steps=steps)

    @classmethod
    def from_vectors(cls, ambient_dim: int, steps: Iterable[Iterable[Sequence[object]]]) -> "FiltrationChain":
        return cls.of(ambient_dim, (Subspace.span(ambient_dim, vectors) for vectors in steps))

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def top(self) -> Subspace:
        return self.steps[-1]

    def at(self, i: int) -> Subspace:
        if i < 0:
            return Subspace.zero(self.ambient_dim)
        return self.steps[min(i, len(self.steps) - 1)]

    def shifted(self, offset: int) -> "FiltrationChain":
        """The chain i -> F^{i+offset}."""
        return FiltrationChain(
            ambient_dim=self.ambient_dim,
            steps=tuple(self.at(i + offset) for i in range(max(self.length - offset, 1))),
        )

    def same_as(self, other: "FiltrationChain") -> bool:
        """Equal at every index, reading past the end as the top."""
        span = max(self.length, other.length)
        return self.ambient_dim == other.ambient_dim and all(self.at(i) == other.at(i) for i in range(span))


def _check_same_ambient(first: FiltrationChain, second: FiltrationChain) -> None:
    if first.ambient_dim != second.ambient_dim:
        raise DomainError(f"chains live in Q^{first.ambient_dim} and Q^{second.ambient_dim}")


def comparable(first: FiltrationChain, second: FiltrationChain, k: int) -> bool:
    """
    Whether second^i ⊆ first^{i+k} ⊆ second^{i+2k} for all i.

    Raises:
        DomainError: If the ambient spaces differ or k is negative
    """
    _check_same_ambient(first, second)
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    span = max(first.length, second.length) + 2 * k
    for i in range(span):
        middle = first.at(i + k)
        if not middle.contains(second.at(i)) or not second.at(i + 2 * k).contains(middle):
            return False
    return True


def interpolate(first: FiltrationChain, second: FiltrationChain, k: int) -> List[FiltrationChain]:
    """
    Chains Psi_0, ..., Psi_{2k} with Psi_j^i = first^{i+k} + second^{i+j}.

    Psi_0 is ``first`` shifted by k and Psi_{2k} is ``second`` shifted by 2k.

    Raises:
        DomainError: If the chains are not k-comparable
    """
    if not comparable(first, second, k):
        raise DomainError(f"filtrations are not comparable with k={k}")
    span = max(first.length, second.length)
    chains = []
    for j in range(2 * k + 1):
        steps = tuple(first.at(i + k).sum(second.at(i + j)) for i in range(span))
        chains.append(FiltrationChain(ambient_dim=first.ambient_dim, steps=steps))
    logger.debug(f"Interpolated {2 * k + 1} chains of length {span} in Q^{first.ambient_dim}")
    return chains


def interpolation_failures(
    first: FiltrationChain, second: FiltrationChain, k: int, chains: List[FiltrationChain]
) -> List[str]:
    """Endpoint and nesting violations of an interpolation; empty when all hold."""
    failures = []
    if not chains[0].same_as(first.shifted(k)):
        failures.append("Psi_0 differs from the first chain shifted by k")
    if not chains[-1].same_as(second.shifted(2 * k)):
        failures.append("Psi_2k differs from the second chain shifted by 2k")
    span = max(first.length, second.length)
    for j in range(len(chains) - 1):
        for i in range(span):
            if not chains[j + 1].at(i).contains(chains[j].at(i)):
                failures.append(f"Psi_{j}^{i} is not contained in Psi_{j + 1}^{i}")
            if not chains[j].at(i + 1).contains(chains[j + 1].at(i)):
                failures.append(f"Psi_{j + 1}^{i} is not contained in Psi_{j}^{i + 1}")
    return failures


def graded_dims(chain: FiltrationChain) -> List[int]:
    """dim F^0, then dim F^{i+1} - dim F^i for each later step."""
    return [chain.at(i).dim - chain.at(i - 1).dim for i in range(chain.length)]


def shift_lemma_dims(first: FiltrationChain, second: FiltrationChain) -> ShiftLemmaReport:
    """
    Kernel and cokernel dimensions for interleaved chains first^i ⊆ second^i ⊆ first^{i+1}.

    K_i = dim second^{i-1} - dim first^{i-1} and C_i = dim second^i - dim first^i;
    the graded map first^i/first^{i-1} -> second^i/second^{i-1} has kernel of
    dimension K_i and cokernel of dimension C_i, and C_i = K_{i+1}.

    Raises:
        DomainError: If interleaving fails, naming the first bad index
    """
    _check_same_ambient(first, second)
    span = max(first.length, second.length)
    for i in range(span + 1):
        if not second.at(i).contains(first.at(i)):
            raise DomainError(f"interleaving fails at index {i}: F^{i} is not contained in Phi^{i}")
        if not first.at(i + 1).contains(second.at(i)):
            raise DomainError(f"interleaving fails at index {i}: Phi^{i} is not contained in F^{i + 1}")

    indices = range(span + 2)
    kernel_dims = [second.at(i - 1).dim - first.at(i - 1).dim for i in indices]
    cokernel_dims = [second.at(i).dim - first.at(i).dim for i in indices]
    kernel_from_map = [first.at(i).intersection_dim(second.at(i - 1)) - first.at(i - 1).dim for i in indices]
    cokernel_from_map = [second.at(i).dim - first.at(i).sum(second.at(i - 1)).dim for i in indices]
    passed = (
        kernel_dims == kernel_from_map
        and cokernel_dims == cokernel_from_map
        and all(cokernel_dims[i] == kernel_dims[i + 1] for i in range(span + 1))
    )
    return ShiftLemmaReport(
        kernel_dims=kernel_dims,
        cokernel_dims=cokernel_dims,
        kernel_from_map=kernel_from_map,
        cokernel_from_map=cokernel_from_map,
        passed=passed,
    )


# Random chains

def _random_combination(rng: random.Random, subspace: Subspace) -> List[Fraction]:
    vector = [Fraction(0)] * subspace.ambient_dim
    for row in subspace.basis:
        coefficient = rng.randint(-RANDOM_COEFFICIENT_BOUND, RANDOM_COEFFICIENT_BOUND)
        vector = [value + coefficient * entry for value, entry in zip(vector, row)]
    return vector


def random_chain(ambient_dim: int, rng: random.Random, length: int = 0) -> FiltrationChain:
    """Random chain, each step adding up to two random integer vectors."""
    length = length or rng.randint(1, MAX_RANDOM_STEPS)
    vectors: List[List[int]] = []
    steps = []
    for _ in range(length):
        for _ in range(rng.randint(0, 2)):
            vectors.append([
                rng.randint(-RANDOM_COEFFICIENT_BOUND, RANDOM_COEFFICIENT_BOUND) for _ in range(ambient_dim)
            ])
        steps.append(Subspace.span(ambient_dim, vectors))
    return FiltrationChain(ambient_dim=ambient_dim, steps=tuple(steps))


def random_comparable_partner(chain: FiltrationChain, k: int, rng: random.Random) -> FiltrationChain:
    """
    A chain Phi with Phi^i ⊆ F^{i+k} ⊆ Phi^{i+2k}.

    Phi^i = F^{i+r-k} + G^i with r drawn from [0, k] and G^i a growing span of
    random vectors of F^{i+k}.
    """
    r = rng.randint(0, k)
    extra = Subspace.zero(chain.ambient_dim)
    steps = []
    for i in range(chain.length + 2 * k):
        extra = extra.sum(Subspace.span(chain.ambient_dim, [_random_combination(rng, chain.at(i + k))]))
        steps.append(chain.at(i + r - k).sum(extra))
    return FiltrationChain(ambient_dim=chain.ambient_dim, steps=tuple(steps))


def random_interleaved_partner(chain: FiltrationChain, rng: random.Random) -> FiltrationChain:
    """A chain Phi with F^i ⊆ Phi^i ⊆ F^{i+1}."""
    steps = []
    for i in range(chain.length):
        vector = _random_combination(rng, chain.at(i + 1))
        steps.append(chain.at(i).sum(Subspace.span(chain.ambient_dim, [vector])))
    return FiltrationChain(ambient_dim=chain.ambient_dim, steps=tuple(steps))


def verify_filtration_lemmas(ambient_dim: int, trials: int, seed: int) -> FiltrationSuiteReport:
    """
    Run comparability, interpolation, graded-dimension and shift checks on random chains.

    Args:
        ambient_dim: N for the ambient space Q^N
        trials: Number of random chains
        seed: Seed for ``random.Random``

    Returns:
        FiltrationSuiteReport with per-check counts and any failures
    """
    if ambient_dim < 1 or trials < 1:
        raise DomainError(f"need ambient_dim >= 1 and trials >= 1, got {ambient_dim} and {trials}")
    rng = random.Random(seed)
    checks: Dict[str, int] = {
        "comparable": 0,
        "comparable-symmetry": 0,
        "interpolation": 0,
        "graded-dims": 0,
        "shift-lemma": 0,
    }
    failures: List[str] = []

    for trial in range(trials):
        chain = random_chain(ambient_dim, rng)
        k = rng.randint(1, 2)
        partner = random_comparable_partner(chain, k, rng)

        checks["comparable"] += 1
        if not comparable(chain, partner, k):
            failures.append(f"trial {trial}: constructed partner is not {k}-comparable")
            continue
        checks["comparable-symmetry"] += 1
        if not comparable(partner, chain, 2 * k):
            failures.append(f"trial {trial}: comparability with k={k} does not give the reverse with {2 * k}")

        checks["interpolation"] += 1
        chains = interpolate(chain, partner, k)
        failures.extend(f"trial {trial}: {message}" for message in interpolation_failures(chain, partner, k, chains))

        checks["graded-dims"] += 1
        if sum(graded_dims(chain)) != chain.top.dim:
            failures.append(f"trial {trial}: graded dimensions do not sum to the top dimension")

        checks["shift-lemma"] += 1
        report = shift_lemma_dims(chain, random_interleaved_partner(chain, rng))
        if not report.passed:
            failures.append(f"trial {trial}: shift identity fails with K={report.kernel_dims}, C={report.cokernel_dims}")

    logger.info(f"Filtration suite in Q^{ambient_dim}: {trials} trials, {len(failures)} failures")
    return FiltrationSuiteReport(
        ambient_dim=ambient_dim,
        trials=trials,
        seed=seed,
        checks=checks,
        failures=failures,
        passed=not failures,
    )


# Text format

def format_chain(chain: FiltrationChain) -> str:
    """``dim N`` header, then one basis row per line, steps separated by ``---``."""
    blocks = ["\n".join(" ".join(str(value) for value in row) for row in step.basis) for step in chain.steps]
    body = f"\n{STEP_SEPARATOR}\n".join(blocks)
    return f"{CHAIN_HEADER} {chain.ambient_dim}\n{body}".rstrip("\n") + "\n"


def parse_chain(text: str) -> FiltrationChain:
    """
    Parse the chain text format written by ``format_chain``.

    Raises:
        ParseError: Missing header, malformed rationals, or rows of the wrong length
        DomainError: If the steps are not nested
    """
    lines = text.splitlines(keepends=True)
    offset = 0
    ambient_dim = None
    steps: List[List[List[Fraction]]] = [[]]
    for line in lines:
        content = line.split("#", 1)[0]
        words = content.split()
        if not words:
            offset += len(line)
            continue
        if ambient_dim is None:
            if words[0] != CHAIN_HEADER or len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise ParseError(f"expected '{CHAIN_HEADER} N' header", offset + content.index(words[0]))
            ambient_dim = int(words[1])
        elif words == [STEP_SEPARATOR]:
            steps.append([])
        else:
            row = []
            column = 0
            for word in words:
                start = content.index(word, column)
                column = start + len(word)
                try:
                    row.append(parse_rational(word))
                except ParseError as e:
                    raise ParseError(e.message, offset + start + (e.position or 0))
            if len(row) != ambient_dim:
                raise ParseError(f"row has {len(row)} entries, expected {ambient_dim}", offset)
            steps[-1].append(row)
        offset += len(line)
    if ambient_dim is None:
        raise ParseError(f"expected '{CHAIN_HEADER} N' header", 0)
    return FiltrationChain.from_vectors(ambient_dim, steps)
