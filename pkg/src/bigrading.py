"""Bigradings of gl(n), PBW monomials and the character xi.

Two commuting integer diagonal matrices X = diag(x) and Y = diag(y) split
gl(n) into weight spaces. With the default ("transposed") convention the
weight of E_ab is (x_b - x_a, y_b - y_a); the "literal" convention negates it.
The default ("shifted") choice of X and Y is

    X = diag(0^{n-d+1}, 1, ..., d-1),  Y = diag(0^{n-d}, 1^d),

for which N_1 is the strictly upper part of the last d-1 columns, the (1,0)
block is the superdiagonal {E_{j,j+1} : j > n-d} and the (0,1) block is
column n-d+1 above the diagonal block. The "unshifted" variant
X = diag(0^{n-d}, 1, ..., d), Y = diag(0^{n-d-1}, 1^{d+1}) is kept for the
negative check.

Basis elements are 1-based pairs (a, b) standing for E_ab. The global order
lists the weight blocks in descending lexicographic order of (i, j) and each
block in lexicographic order of (a, b); PBW monomials list their factors in
that order.
"""

import logging
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial
from typing import Dict, Iterator, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field
from sympy import Poly, Symbol
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from src.errors import DomainError
from src.filtrations import Subspace
from src.matrixlab import ExactMatrix, LinearFunctional
from src.scalars import ExactComplex, Rational, rational_to_domain
from src.schemas import (
    AdIdentityCase,
    AdIdentityReport,
    ClauseResult,
    ConditionReport,
    EnumerationReport,
    MonomialClass,
    PremiseReport,
)

# Configure logging
logger = logging.getLogger(__name__)

Elementary = Tuple[int, int]
Weight = Tuple[int, int]

FROZEN = ConfigDict(frozen=True, arbitrary_types_allowed=True)
SMALL_ENUMERATION_SIZE = 4
LARGE_ENUMERATION_DEGREE = 2


class BigradedBasis(BaseModel):
    """Elementary-matrix basis of gl(n) split into (i, j) weight blocks."""

    model_config = FROZEN

    n: int = Field(..., ge=1)
    d: int = Field(..., ge=1)
    variant: Literal["shifted", "unshifted"] = "shifted"
    bracket: Literal["transposed", "literal"] = "transposed"
    x: Tuple[int, ...]
    y: Tuple[int, ...]
    weights: Dict[Elementary, Weight]
    blocks: Dict[Weight, Tuple[Elementary, ...]]
    order: Tuple[Elementary, ...]
    index: Dict[Elementary, int]

    def weight(self, element: Elementary) -> Weight:
        return self.weights[element]

    def block(self, i: int, j: int) -> Tuple[Elementary, ...]:
        return self.blocks.get((i, j), ())

    def filtration_part(self, s: int) -> Tuple[Elementary, ...]:
        """Basis of N_s: all elements of X-weight at least s."""
        return tuple(e for e in self.order if self.weights[e][0] >= s)

    def monomial(self, factors: Tuple[Elementary, ...]) -> "PBWMonomial":
        """Build a PBW monomial, checking that the factors follow the global order."""
        check_well_ordered(self, factors)
        return PBWMonomial(factors=tuple(factors), weight=_sum_weights(self, factors))


class PBWMonomial(BaseModel):
    """Ordered product of basis elements; ``weight`` is the sum of factor weights."""

    model_config = FROZEN

    factors: Tuple[Elementary, ...] = ()
    weight: Weight = (0, 0)

    @property
    def degree(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"E{a}{b}" if max(a, b) < 10 else f"E({a},{b})" for a, b in self.factors)


class XiCharacter(BaseModel):
    """A functional on gl(n) given by its values on basis elements."""

    model_config = FROZEN

    values: Dict[Elementary, Rational] = Field(default_factory=dict)

    @property
    def support(self) -> Tuple[Elementary, ...]:
        return tuple(sorted(e for e, v in self.values.items() if v != 0))

    def value(self, element: Elementary) -> Fraction:
        return self.values.get(element, Fraction(0))

    def on_combination(self, combination: Dict[Elementary, int]) -> Fraction:
        return sum((coefficient * self.value(e) for e, coefficient in combination.items()), Fraction(0))


class ScaledMonomial(BaseModel):
    """coefficient * monomial, the value of the xi-reduction map."""

    model_config = FROZEN

    coefficient: Rational
    monomial: PBWMonomial
    in_a01: bool = Field(..., description="Remaining factors all lie in the (0,1) block")


def _sum_weights(b: BigradedBasis, factors: Tuple[Elementary, ...]) -> Weight:
    i = sum(b.weights[e][0] for e in factors)
    j = sum(b.weights[e][1] for e in factors)
    return (i, j)


def build_bigrading(
    n: int,
    d: int,
    variant: Literal["shifted", "unshifted"] = "shifted",
    bracket: Literal["transposed", "literal"] = "transposed",
) -> BigradedBasis:
    """
    Build the bigraded basis of gl(n) for depth d.

    Args:
        n: Matrix size
        d: Depth, 1 <= d <= n (d < n for the unshifted variant)
        variant: Choice of X and Y, see the module docstring
        bracket: "transposed" for weight (x_b - x_a, ...), "literal" for (x_a - x_b, ...)

    Returns:
        BigradedBasis with weights, blocks and the global order

    Raises:
        DomainError: If d is out of range
    """
    if not 1 <= d <= n:
        raise DomainError(f"need 1 <= d <= n, got n={n}, d={d}")
    if variant == "shifted":
        x = [0] * (n - d + 1) + list(range(1, d))
        y = [0] * (n - d) + [1] * d
    else:
        if d == n:
            raise DomainError("the unshifted bigrading needs d < n")
        x = [0] * (n - d) + list(range(1, d + 1))
        y = [0] * (n - d - 1) + [1] * (d + 1)

    sign = 1 if bracket == "transposed" else -1
    weights: Dict[Elementary, Weight] = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            weights[(a, b)] = (sign * (x[b - 1] - x[a - 1]), sign * (y[b - 1] - y[a - 1]))

    grouped: Dict[Weight, List[Elementary]] = {}
    for element in sorted(weights):
        grouped.setdefault(weights[element], []).append(element)
    blocks = {weight: tuple(grouped[weight]) for weight in sorted(grouped, reverse=True)}
    order = tuple(element for block in blocks.values() for element in block)
    logger.debug(f"Built {variant}/{bracket} bigrading for n={n}, d={d} with {len(blocks)} blocks")
    return BigradedBasis(
        n=n,
        d=d,
        variant=variant,
        bracket=bracket,
        x=tuple(x),
        y=tuple(y),
        weights=weights,
        blocks=blocks,
        order=order,
        index={element: position for position, element in enumerate(order)},
    )


def default_xi(b: BigradedBasis) -> XiCharacter:
    """Ones on the superdiagonal of the lower block: j = n-d+1..n-1 (shifted) or n-d..n-1."""
    first = b.n - b.d + 1 if b.variant == "shifted" else b.n - b.d
    return XiCharacter(values={(j, j + 1): Fraction(1) for j in range(max(first, 1), b.n)})


def bracket_elementary(first: Elementary, second: Elementary) -> Dict[Elementary, int]:
    """[E_ab, E_cd] = delta_bc E_ad - delta_da E_cb, as a {element: coefficient} map."""
    (a, b), (c, d) = first, second
    result: Dict[Elementary, int] = {}
    if b == c:
        result[(a, d)] = result.get((a, d), 0) + 1
    if d == a:
        result[(c, b)] = result.get((c, b), 0) - 1
    return {e: v for e, v in result.items() if v}


def group_of(weight: Weight) -> int:
    """Group 1: above (1,0); 2: from (0,1) to (1,0); 3: from (0,-1) to (0,0); 4: below (0,-1)."""
    if weight > (1, 0):
        return 1
    if weight >= (0, 1):
        return 2
    if weight >= (0, -1):
        return 3
    return 4


def check_well_ordered(b: BigradedBasis, factors: Tuple[Elementary, ...]) -> None:
    positions = []
    for element in factors:
        if element not in b.index:
            raise DomainError(f"E{element} is not a basis element of gl({b.n})")
        positions.append(b.index[element])
    for left, right in zip(positions, positions[1:]):
        if right < left:
            raise DomainError(
                f"factors {b.order[left]} and {b.order[right]} are out of PBW order"
            )


def stabilizer_basis(b: BigradedBasis, xi: XiCharacter) -> Tuple[Elementary, ...]:
    """
    Basis elements Z of X-weight 0 with xi([Z, B]) = 0 for every B in N_1.

    These are monomial generators only, the factors ``xi_apply`` may keep;
    combinations whose brackets cancel under xi are found by
    ``stabilizer_subspace``.
    """
    n_one = b.filtration_part(1)
    return tuple(
        e for e in b.order
        if b.weights[e][0] == 0
        and all(xi.on_combination(bracket_elementary(e, other)) == 0 for other in n_one)
    )


def weight_zero_part(b: BigradedBasis) -> Tuple[Elementary, ...]:
    """Basis of the X-weight-0 subalgebra, in the global order."""
    return tuple(e for e in b.order if b.weights[e][0] == 0)


def stabilizer_subspace(b: BigradedBasis, xi: XiCharacter) -> Subspace:
    """
    The stabilizer of xi in the X-weight-0 subalgebra.

    Solves xi([Z, B]) = 0 for all B in N_1 over Q; coordinates are on
    ``weight_zero_part(b)``.
    """
    zero_part = weight_zero_part(b)
    n_one = b.filtration_part(1)
    if not n_one:
        return Subspace.full(len(zero_part))
    rows = [
        [rational_to_domain(xi.on_combination(bracket_elementary(z, other))) for z in zero_part]
        for other in n_one
    ]
    kernel = DomainMatrix(rows, (len(n_one), len(zero_part)), QQ).nullspace()
    logger.debug(f"stabilizer of xi for n={b.n}, d={b.d}: {kernel.shape[0]} of {len(zero_part)} dimensions")
    return Subspace.span(len(zero_part), kernel.to_list())


def check_condition(b: BigradedBasis, xi: Optional[XiCharacter] = None) -> ConditionReport:
    """
    Check the premises on (X, Y, xi) clause by clause.

    Clauses: X and Y act semisimply with the recorded weights; all j-weights lie
    in {-1, 0, 1} and the (1,-1) block is empty; xi lives on the (1,0) block
    and is a character of N_1; xi([A, B]) = 0 for A in the (0,1) block and B in N_1.
    """
    xi = xi if xi is not None else default_xi(b)
    sign = 1 if b.bracket == "literal" else -1

    semisimple: List[str] = []
    x_matrix = ExactMatrix.diagonal(list(b.x))
    y_matrix = ExactMatrix.diagonal(list(b.y))
    if x_matrix @ y_matrix != y_matrix @ x_matrix:
        semisimple.append("X and Y do not commute")
    for element in b.order:
        e_matrix = ExactMatrix.elementary(b.n, *element)
        i, j = b.weights[element]
        for name, diagonal, eigenvalue in (("X", x_matrix, i), ("Y", y_matrix, j)):
            commutator = (diagonal @ e_matrix - e_matrix @ diagonal).scale(sign)
            if commutator != e_matrix.scale(eigenvalue):
                semisimple.append(f"E{element} is not a {name}-eigenvector of weight {eigenvalue}")

    weight_range: List[str] = []
    for element in b.order:
        j = b.weights[element][1]
        if j not in (-1, 0, 1):
            weight_range.append(f"E{element} has j-weight {j}")
    for element in b.block(1, -1):
        weight_range.append(f"E{element} lies in the (1,-1) block")

    character: List[str] = []
    a_10 = set(b.block(1, 0))
    for element in xi.support:
        if element not in a_10:
            character.append(f"xi is nonzero on E{element} of weight {b.weights.get(element)}")
    n_one = b.filtration_part(1)
    for first in n_one:
        for second in n_one:
            value = xi.on_combination(bracket_elementary(first, second))
            if value != 0:
                character.append(f"xi([E{first}, E{second}]) = {value}")

    stabilizer: List[str] = []
    for first in b.block(0, 1):
        for second in n_one:
            value = xi.on_combination(bracket_elementary(first, second))
            if value != 0:
                stabilizer.append(f"xi([E{first}, E{second}]) = {value}")

    clauses = [
        ClauseResult(name="semisimple", description="X, Y commute and act diagonally with the recorded weights",
                     passed=not semisimple, violations=semisimple),
        ClauseResult(name="weight-range", description="j in {-1,0,1} and the (1,-1) block is empty",
                     passed=not weight_range, violations=weight_range),
        ClauseResult(name="xi-character", description="xi vanishes off the (1,0) block and on [N_1, N_1]",
                     passed=not character, violations=character),
        ClauseResult(name="stabilizer", description="the (0,1) block stabilizes xi",
                     passed=not stabilizer, violations=stabilizer),
    ]
    report = ConditionReport(
        n=b.n,
        d=b.d,
        variant=b.variant,
        bracket=b.bracket,
        clauses=clauses,
        passed=all(clause.passed for clause in clauses),
    )
    logger.info(f"Condition check n={b.n}, d={b.d} ({b.variant}/{b.bracket}): passed={report.passed}")
    return report


def _class_counts(b: BigradedBasis, factors: Tuple[Elementary, ...]) -> Tuple[Dict[int, int], int, int]:
    histogram = {1: 0, 2: 0, 3: 0, 4: 0}
    k = l = 0
    for element in factors:
        weight = b.weights[element]
        histogram[group_of(weight)] += 1
        if weight == (1, 0):
            k += 1
        elif weight == (0, 1):
            l += 1
    return histogram, k, l


def classify_monomial(b: BigradedBasis, monomial: PBWMonomial, n_deg: int) -> MonomialClass:
    """
    Relevant iff the degree is n_deg and every factor lies in the (1,0) or (0,1) block.

    Raises:
        DomainError: If the factors are not in PBW order
    """
    check_well_ordered(b, monomial.factors)
    histogram, k, l = _class_counts(b, monomial.factors)
    return MonomialClass(
        relevant=monomial.degree == n_deg and k + l == monomial.degree,
        degree=monomial.degree,
        weight=_sum_weights(b, monomial.factors),
        histogram=histogram,
        k=k,
        l=l,
    )


def xi_apply(b: BigradedBasis, xi: XiCharacter, monomial: PBWMonomial) -> ScaledMonomial:
    """
    Replace N_1 factors by their xi-values and keep the stabilizer factors.

    Raises:
        DomainError: If a factor lies neither in N_1 nor in the stabilizer of xi
    """
    check_well_ordered(b, monomial.factors)
    stabilizer = set(stabilizer_basis(b, xi))
    coefficient = Fraction(1)
    kept: List[Elementary] = []
    for element in monomial.factors:
        if b.weights[element][0] >= 1:
            coefficient *= xi.value(element)
        elif element in stabilizer:
            kept.append(element)
        else:
            raise DomainError(f"E{element} lies neither in N_1 nor in the stabilizer of xi")
    if coefficient == 0:
        return ScaledMonomial(coefficient=Fraction(0), monomial=PBWMonomial(), in_a01=True)
    a_01 = set(b.block(0, 1))
    rest = tuple(kept)
    return ScaledMonomial(
        coefficient=coefficient,
        monomial=PBWMonomial(factors=rest, weight=_sum_weights(b, rest)),
        in_a01=all(element in a_01 for element in rest),
    )


def evaluate_symbol(monomial: PBWMonomial, functional: LinearFunctional, degree: int) -> ExactComplex:
    """Degree-``degree`` symbol of the monomial paired with a functional."""
    if monomial.degree != degree:
        return ExactComplex()
    value = ExactComplex(re=Fraction(1))
    for a, b in monomial.factors:
        value = value * functional.on_elementary(a, b)
    return value


def key_functional(b: BigradedBasis, xi: XiCharacter, phi: Dict[Elementary, object]) -> LinearFunctional:
    """
    phi on the (0,1) block plus xi on the (1,0) block.

    Raises:
        DomainError: If phi is given outside the (0,1) block
    """
    a_01 = set(b.block(0, 1))
    for element in phi:
        if element not in a_01:
            raise DomainError(f"phi must live on the (0,1) block, got E{element}")
    values: Dict[Elementary, object] = dict(xi.values)
    values.update(phi)
    return LinearFunctional.from_values(b.n, values)


def enumerate_monomials(b: BigradedBasis, max_degree: int, min_degree: int = 0) -> Iterator[PBWMonomial]:
    """All PBW monomials with min_degree <= degree <= max_degree."""
    for degree in range(min_degree, max_degree + 1):
        for positions in combinations_with_replacement(range(len(b.order)), degree):
            factors = tuple(b.order[p] for p in positions)
            yield PBWMonomial(factors=factors, weight=_sum_weights(b, factors))


def verify_weight_additivity(b: BigradedBasis, max_degree: int) -> EnumerationReport:
    """Products of elementary matrices in the defining representation land in the summed weight block."""
    failures: List[str] = []
    checked = 0
    for monomial in enumerate_monomials(b, max_degree, min_degree=1):
        checked += 1
        current: Optional[Elementary] = monomial.factors[0]
        for element in monomial.factors[1:]:
            if current[1] != element[0]:
                current = None
                break
            current = (current[0], element[1])
        if current is not None and current not in b.blocks.get(monomial.weight, ()):
            failures.append(f"{monomial} = E{current} is not in block {monomial.weight}")
    return EnumerationReport(name="weight-additivity", checked=checked, failures=failures, passed=not failures)


def verify_relevant_weights(b: BigradedBasis, n_deg: int) -> EnumerationReport:
    """Relevant monomials of degree n_deg have weight (k, l) with k, l >= 0, k + l = n_deg, k factors from (1,0)."""
    failures: List[str] = []
    checked = 0
    for monomial in enumerate_monomials(b, n_deg, min_degree=n_deg):
        _, k, l = _class_counts(b, monomial.factors)
        if k + l != monomial.degree:
            continue
        checked += 1
        i, j = monomial.weight
        if i < 0 or j < 0 or i + j != n_deg or k != i:
            failures.append(f"{monomial} has weight {monomial.weight} with {k} factors from (1,0)")
    return EnumerationReport(name="relevant-weights", checked=checked, failures=failures, passed=not failures)


def verify_irrelevant_bound(b: BigradedBasis, max_degree: int) -> EnumerationReport:
    """Irrelevant monomials with no group-1 and some group-4 factor have more (1,0) factors than their X-weight."""
    failures: List[str] = []
    checked = 0
    for monomial in enumerate_monomials(b, max_degree, min_degree=1):
        histogram, k, l = _class_counts(b, monomial.factors)
        relevant = monomial.degree == max_degree and k + l == monomial.degree
        if relevant or histogram[1] or not histogram[4]:
            continue
        checked += 1
        if k < monomial.weight[0] + 1:
            failures.append(f"{monomial} has X-weight {monomial.weight[0]} but only {k} factors from (1,0)")
    return EnumerationReport(name="irrelevant-bound", checked=checked, failures=failures, passed=not failures)


def verify_keylemma_premises(n: int, d: int) -> PremiseReport:
    """Condition check plus the monomial enumerations (degree <= 4 when n <= 4, else <= 2)."""
    b = build_bigrading(n, d)
    degree = min(n, SMALL_ENUMERATION_SIZE) if n <= SMALL_ENUMERATION_SIZE else LARGE_ENUMERATION_DEGREE
    condition = check_condition(b)
    enumerations = [
        verify_weight_additivity(b, degree),
        verify_relevant_weights(b, degree),
        verify_irrelevant_bound(b, degree),
    ]
    return PremiseReport(
        n=n,
        d=d,
        condition=condition,
        enumerations=enumerations,
        passed=condition.passed and all(e.passed for e in enumerations),
    )


# Enveloping algebra of span{I, X} with [I, X] = X.
# Elements are {b: f} meaning sum_b f(I) X^b, and X^b g(I) = g(I - b) X^b.

GENERATOR_I = Symbol("I")
Enveloping = Dict[int, Poly]


def _normalize(element: Dict[int, Poly]) -> Enveloping:
    return {power: poly for power, poly in element.items() if not poly.is_zero}


def _constant(value: int) -> Poly:
    return Poly(value, GENERATOR_I, domain="QQ")


def enveloping_multiply(left: Enveloping, right: Enveloping) -> Enveloping:
    result: Dict[int, Poly] = {}
    for b, f in left.items():
        for c, g in right.items():
            term = f * g.shift(-b)
            result[b + c] = result[b + c] + term if b + c in result else term
    return _normalize(result)


def enveloping_subtract(left: Enveloping, right: Enveloping) -> Enveloping:
    result = dict(left)
    for power, poly in right.items():
        result[power] = result[power] - poly if power in result else -poly
    return _normalize(result)


def ad_x(element: Enveloping) -> Enveloping:
    x = {1: _constant(1)}
    return enveloping_subtract(enveloping_multiply(x, element), enveloping_multiply(element, x))


def format_enveloping(element: Enveloping) -> str:
    if not element:
        return "0"
    terms = []
    for power in sorted(element, reverse=True):
        coefficient = element[power].as_expr()
        if power == 0:
            terms.append(str(coefficient))
            continue
        monomial = "X" if power == 1 else f"X^{power}"
        if coefficient == 1:
            terms.append(monomial)
        elif coefficient == -1:
            terms.append(f"-{monomial}")
        elif coefficient.is_number:
            terms.append(f"{coefficient}*{monomial}")
        else:
            terms.append(f"({coefficient})*{monomial}")
    return " + ".join(terms)


def ad_power_identity(k: int) -> AdIdentityReport:
    """
    Check ad(X)^k(I^k) = k! (-X)^k and ad(X)^k(I^m) = 0 for m < k.

    Raises:
        DomainError: If k < 1
    """
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    cases: List[AdIdentityCase] = []
    for m in range(k + 1):
        element: Enveloping = {0: Poly(GENERATOR_I ** m, GENERATOR_I, domain="QQ")}
        for _ in range(k):
            element = ad_x(element)
        expected: Enveloping = {k: _constant(factorial(k) * (-1) ** k)} if m == k else {}
        holds = element.keys() == expected.keys() and all(element[p] == expected[p] for p in element)
        cases.append(AdIdentityCase(
            m=m,
            computed=format_enveloping(element),
            expected=format_enveloping(expected),
            holds=holds,
        ))
    logger.info(f"Checked ad(X)^{k} on I^0..I^{k}")
    return AdIdentityReport(k=k, cases=cases, passed=all(case.holds for case in cases))
