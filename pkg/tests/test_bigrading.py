from fractions import Fraction

import pytest

from src.bigrading import (
    XiCharacter,
    ad_power_identity,
    bracket_elementary,
    build_bigrading,
    check_condition,
    classify_monomial,
    default_xi,
    enumerate_monomials,
    evaluate_symbol,
    group_of,
    key_functional,
    stabilizer_basis,
    stabilizer_subspace,
    verify_keylemma_premises,
    weight_zero_part,
    xi_apply,
)
from src.errors import DomainError
from src.filtrations import Subspace
from src.scalars import ExactComplex


@pytest.fixture
def small():
    return build_bigrading(3, 2)


def test_weights_for_three_by_three(small):
    assert small.x == (0, 0, 1)
    assert small.y == (0, 1, 1)
    assert small.weight((1, 2)) == (0, 1)
    assert small.weight((1, 3)) == (1, 1)
    assert small.weight((2, 3)) == (1, 0)
    assert small.block(1, 0) == ((2, 3),)
    assert small.block(0, 1) == ((1, 2),)
    assert small.order[:3] == ((1, 3), (2, 3), (1, 2))
    assert small.filtration_part(1) == ((1, 3), (2, 3))


def test_literal_bracket_negates_weights():
    literal = build_bigrading(3, 2, bracket="literal")
    assert literal.weight((2, 3)) == (-1, 0)
    assert literal.block(1, 0) == ((3, 2),)


def test_full_depth_has_empty_01_block():
    b = build_bigrading(4, 4)
    assert b.y == (1, 1, 1, 1)
    assert b.block(0, 1) == ()


@pytest.mark.parametrize("n, d", [(4, 2), (5, 3), (6, 6), (8, 5)])
def test_10_block_is_the_lower_superdiagonal(n, d):
    b = build_bigrading(n, d)
    expected = tuple((j, j + 1) for j in range(n - d + 1, n))
    assert b.block(1, 0) == expected
    assert default_xi(b).support == expected
    column = tuple((a, n - d + 1) for a in range(1, n - d + 1))
    assert b.block(0, 1) == column


@pytest.mark.parametrize("n, d, variant", [(3, 0, "shifted"), (3, 4, "shifted"), (3, 3, "unshifted")])
def test_build_bigrading_rejects_bad_depth(n, d, variant):
    with pytest.raises(DomainError):
        build_bigrading(n, d, variant=variant)


def test_bracket_of_elementary_matrices():
    assert bracket_elementary((1, 2), (2, 3)) == {(1, 3): 1}
    assert bracket_elementary((2, 3), (1, 2)) == {(1, 3): -1}
    assert bracket_elementary((1, 2), (2, 1)) == {(1, 1): 1, (2, 2): -1}
    assert bracket_elementary((1, 2), (3, 4)) == {}


@pytest.mark.parametrize("weight, group", [
    ((1, 1), 1), ((2, -1), 1),
    ((1, 0), 2), ((0, 1), 2),
    ((0, 0), 3), ((0, -1), 3),
    ((-1, 1), 4), ((0, -2), 4),
])
def test_group_of(weight, group):
    assert group_of(weight) == group


@pytest.mark.parametrize("n", range(2, 9))
def test_condition_holds_for_shifted_bigrading(n):
    for d in range(2, n + 1):
        report = check_condition(build_bigrading(n, d))
        assert report.passed, [clause for clause in report.clauses if not clause.passed]
        assert [clause.name for clause in report.clauses] == [
            "semisimple", "weight-range", "xi-character", "stabilizer",
        ]


def test_unshifted_literal_bigrading_fails_the_character_clause():
    report = check_condition(build_bigrading(4, 2, variant="unshifted", bracket="literal"))
    assert not report.passed
    clauses = {clause.name: clause for clause in report.clauses}
    assert not clauses["xi-character"].passed
    assert clauses["semisimple"].passed
    assert any("(2, 3)" in violation for violation in clauses["xi-character"].violations)


def test_classify_monomial(small):
    relevant = classify_monomial(small, small.monomial(((2, 3), (1, 2))), 2)
    assert relevant.relevant
    assert relevant.weight == (1, 1)
    assert (relevant.k, relevant.l) == (1, 1)
    assert relevant.histogram == {1: 0, 2: 2, 3: 0, 4: 0}

    irrelevant = classify_monomial(small, small.monomial(((1, 3),)), 1)
    assert not irrelevant.relevant
    assert irrelevant.histogram[1] == 1


def test_monomials_must_follow_the_global_order(small):
    with pytest.raises(DomainError, match="PBW order"):
        small.monomial(((1, 2), (2, 3)))
    with pytest.raises(DomainError):
        small.monomial(((1, 4),))


def test_stabilizer_of_default_xi(small):
    assert stabilizer_basis(small, default_xi(small)) == ((1, 2), (1, 1))


def test_stabilizer_subspace_includes_combinations(small):
    xi = default_xi(small)
    coordinates = weight_zero_part(small)
    assert set(coordinates) == {(1, 1), (1, 2), (2, 1), (2, 2), (3, 3)}
    space = stabilizer_subspace(small, xi)
    assert space.dim == 3

    def line(*elements):
        return Subspace.span(len(coordinates), [[1 if e in elements else 0 for e in coordinates]])

    for element in stabilizer_basis(small, xi):
        assert space.contains(line(element))
    assert space.contains(line((2, 2), (3, 3)))
    assert not space.contains(line((2, 2)))
    assert not space.contains(line((2, 1)))


def test_stabilizer_subspace_without_n1():
    basis = build_bigrading(3, 1)
    assert basis.filtration_part(1) == ()
    space = stabilizer_subspace(basis, default_xi(basis))
    assert space.dim == len(weight_zero_part(basis))


def test_xi_apply(small):
    xi = default_xi(small)
    scaled = xi_apply(small, xi, small.monomial(((2, 3), (1, 2))))
    assert scaled.coefficient == 1
    assert str(scaled.monomial) == "E12"
    assert scaled.in_a01

    vanished = xi_apply(small, xi, small.monomial(((1, 3), (1, 2))))
    assert vanished.coefficient == 0

    with pytest.raises(DomainError, match="stabilizer"):
        xi_apply(small, xi, small.monomial(((2, 2),)))


def test_evaluate_symbol_against_key_functional(small):
    xi = XiCharacter(values={(2, 3): Fraction(2)})
    functional = key_functional(small, xi, {(1, 2): 3})
    monomial = small.monomial(((2, 3), (1, 2)))
    assert str(monomial) == "E23*E12"
    assert evaluate_symbol(monomial, functional, 2) == ExactComplex.of(6)
    assert evaluate_symbol(monomial, functional, 3) == ExactComplex()
    with pytest.raises(DomainError):
        key_functional(small, xi, {(2, 3): 1})


def test_enumerate_monomials_counts(small):
    assert sum(1 for _ in enumerate_monomials(small, 2)) == 1 + 9 + 45
    assert all(m.degree == 2 for m in enumerate_monomials(small, 2, min_degree=2))


@pytest.mark.parametrize("n", range(1, 5))
def test_keylemma_premises_small(n):
    for d in range(1, n + 1):
        report = verify_keylemma_premises(n, d)
        assert report.passed, [e.failures[:3] for e in report.enumerations]
        assert [e.name for e in report.enumerations] == [
            "weight-additivity", "relevant-weights", "irrelevant-bound",
        ]


def test_keylemma_premises_larger_n_uses_low_degree():
    report = verify_keylemma_premises(6, 3)
    assert report.passed
    assert report.enumerations[0].checked == 36 + 36 * 37 // 2


@pytest.mark.parametrize("k", range(1, 7))
def test_ad_power_identity(k):
    report = ad_power_identity(k)
    assert report.passed
    assert len(report.cases) == k + 1
    assert all(case.computed == "0" for case in report.cases[:-1])


@pytest.mark.parametrize("k, printed", [(1, "-X"), (2, "2*X^2"), (3, "-6*X^3"), (4, "24*X^4")])
def test_ad_power_identity_printing(k, printed):
    assert ad_power_identity(k).cases[-1].computed == printed


def test_ad_power_identity_rejects_non_positive_k():
    with pytest.raises(DomainError):
        ad_power_identity(0)
