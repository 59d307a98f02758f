from fractions import Fraction

import pytest
from hypothesis import given, settings

from src.errors import DomainError, ParseError
from src.partitions import Partition, induced_sum, transpose
from src.reps import (
    CharacterRep,
    RepExpr,
    SpehCSRep,
    SpehRep,
    SteinRep,
    associated_partition,
    character,
    depth,
    format_expression,
    grothendieck_equal,
    is_monomial,
    monomial,
    parse_expression,
    product,
    require_valid,
    speh_presentations,
    validate,
)
from src.scalars import ExactComplex
from tests.strategies import expressions


def test_parse_positional_and_keyword():
    expr = parse_expression("spehcs(2,k=3,s=1/4) x chi(3,0,2*i)")
    assert expr.factors == (
        SpehCSRep(m=2, k=3, s=Fraction(1, 4)),
        CharacterRep(n=3, eps=0, z=ExactComplex(im=Fraction(2))),
    )
    assert expr.n == 11


def test_parse_twists_and_defaults():
    expr = parse_expression("stein(2,1/3;1,-1) x speh(1,2;1/2) x chi(2)")
    assert expr.factors[0] == SteinRep(m=2, s=Fraction(1, 3), eps=1, t=Fraction(-1))
    assert expr.factors[1] == SpehRep(m=1, k=2, t=Fraction(1, 2))
    assert expr.factors[2] == CharacterRep(n=2)


def test_trivial_literal():
    assert parse_expression("triv") == RepExpr()
    assert format_expression(RepExpr()) == "triv"
    assert RepExpr().is_trivial


@pytest.mark.parametrize("text", [
    "chi(3,0",
    "chi(3,0,0) y chi(1)",
    "speh(2)",
    "speh(2,k=1,k=2)",
    "speh(m=2,1)",
    "chi(3/2)",
    "stein(2,1/4,i)",
    "foo(1)",
    "chi(1,0,0) x",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_expression(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as excinfo:
        parse_expression("chi(1,0,0) x bar(2)")
    assert excinfo.value.position == 13


def test_out_of_range_size_is_a_domain_error():
    with pytest.raises(DomainError):
        parse_expression("chi(0,0,0)")


@pytest.mark.parametrize("expr, printed", [
    (RepExpr(factors=(SteinRep(m=1, s=Fraction(1, 4)),)), "stein(1,1/4)"),
    (RepExpr(factors=(SteinRep(m=1, s=Fraction(1, 4), t=Fraction(1)),)), "stein(1,1/4;0,1)"),
    (RepExpr(factors=(SpehRep(m=2, k=1),)), "speh(2,1)"),
    (RepExpr(factors=(SpehCSRep(m=1, k=2, s=Fraction(1, 3), t=Fraction(-1, 2)),)), "spehcs(1,2,1/3;-1/2)"),
    (RepExpr(factors=(character(2, 1, ExactComplex.of(Fraction(1, 2), -1)),)), "chi(2,1,1/2-1*i)"),
])
def test_format_expression(expr, printed):
    assert format_expression(expr) == printed


@settings(max_examples=500)
@given(expressions())
def test_print_parse_round_trip(expr):
    assert parse_expression(format_expression(expr), expr.field) == expr


@settings(max_examples=200)
@given(expressions(field="C"))
def test_print_parse_round_trip_over_c(expr):
    assert parse_expression(format_expression(expr), "C") == expr


def test_validate_accepts_speh_complementary_series():
    report = validate(parse_expression("spehcs(2,2,1/4)"))
    assert report.valid
    assert report.issues == []


def test_validate_rejects_speh_over_c():
    report = validate(parse_expression("speh(2,1) x chi(1,0,0)", field="C"))
    assert not report.valid
    assert [issue.factor_index for issue in report.issues] == [0]


@pytest.mark.parametrize("text", ["stein(2,1/2)", "stein(1,0)", "spehcs(1,1,3/4)"])
def test_validate_rejects_s_outside_open_interval(text):
    report = validate(parse_expression(text))
    assert not report.valid
    assert "(0,1/2)" in report.issues[0].constraint


def test_validate_sign_datum_over_r_and_c():
    assert not validate(parse_expression("chi(2,2,0)")).valid
    assert validate(parse_expression("chi(2,2,0)", field="C")).valid


def test_require_valid_raises_domain_error():
    with pytest.raises(DomainError, match="0,1/2"):
        require_valid(parse_expression("stein(2,1/2)"))


@pytest.mark.parametrize("text, parts", [
    ("speh(3,2)", (2, 2, 2)),
    ("chi(1,0,0) x chi(1,1,0) x chi(1,0,i)", (3,)),
    ("chi(4,0,0)", (1, 1, 1, 1)),
    ("spehcs(2,1,1/4) x chi(3,0,1)", (5, 5, 1)),
    ("stein(2,1/3) x speh(1,2)", (4, 2)),
    ("triv", ()),
])
def test_associated_partition(text, parts):
    assert associated_partition(parse_expression(text)) == Partition(parts=parts)


@pytest.mark.parametrize("text, expected", [
    ("spehcs(1,3,1/4)", 4),
    ("chi(5,0,0)", 1),
    ("speh(2,1) x chi(2,0,0)", 3),
    ("triv", 0),
])
def test_depth(text, expected):
    assert depth(parse_expression(text)) == expected


@given(expressions(), expressions())
def test_product_is_additive(a, b):
    joined = product(a, b)
    assert joined.n == a.n + b.n
    assert associated_partition(joined) == induced_sum([associated_partition(a), associated_partition(b)])
    assert depth(joined) == depth(a) + depth(b)


def test_product_unit_and_field_mismatch():
    chi = parse_expression("chi(2,0,1/2)")
    assert product(chi, RepExpr()) == chi
    with pytest.raises(DomainError):
        product(chi, RepExpr(field="C"))


def test_speh_presentations():
    quotient, _ = speh_presentations(2, 1)
    assert quotient == monomial([character(2, 0, Fraction(-1, 2)), character(2, 0, Fraction(1, 2))])
    _, submodule = speh_presentations(2, 2)
    assert submodule == monomial([character(2, 1, 1), character(2, 0, -1)])
    for m in range(1, 4):
        for k in range(1, 4):
            for presentation in speh_presentations(m, k):
                assert is_monomial(presentation)
                assert associated_partition(presentation) == Partition.rectangle(2, m)


def test_monomial_ap_transposes_sizes():
    expr = monomial([character(3), character(1), character(2)])
    assert transpose(associated_partition(expr)) == Partition.of(3, 2, 1)


def test_grothendieck_equal_ignores_order():
    a = parse_expression("chi(1,0,0) x speh(1,2)")
    b = parse_expression("speh(1,2) x chi(1,0,0)")
    assert a != b
    assert grothendieck_equal(a, b)
    assert not grothendieck_equal(a, parse_expression("speh(1,2)"))


def test_product_separator_without_spaces():
    assert parse_expression("chi(1,0,0)xchi(2,1,i)") == parse_expression("chi(1,0,0) x chi(2,1,i)")
    assert parse_expression("speh(2,1)xspehcs(1,1,1/4)").n == 8
    with pytest.raises(ParseError) as excinfo:
        parse_expression("chi(1,0,0)xbar(2)")
    assert excinfo.value.position == 11


@pytest.mark.parametrize("text", ["chi(1,0,--1)", "chi(1,0,+-1)", "chi(1,0,1+-i)", "chi(1,0,-+i)"])
def test_repeated_signs_are_rejected(text):
    with pytest.raises(ParseError):
        parse_expression(text)
