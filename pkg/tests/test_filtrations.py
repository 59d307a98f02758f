import random

import pytest

from src.errors import DomainError, ParseError
from src.filtrations import (
    FiltrationChain,
    Subspace,
    comparable,
    format_chain,
    graded_dims,
    interpolate,
    interpolation_failures,
    parse_chain,
    random_chain,
    random_comparable_partner,
    random_interleaved_partner,
    shift_lemma_dims,
    verify_filtration_lemmas,
)

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


@pytest.fixture
def flag():
    return FiltrationChain.from_vectors(3, [[E1], [E1, E2], [E1, E2, E3]])


def test_subspace_is_canonical():
    assert Subspace.span(3, [(2, 4, 6)]) == Subspace.span(3, [(1, 2, 3), (3, 6, 9)])
    assert Subspace.span(3, [(1, 2, 3)]).dim == 1
    assert Subspace.full(3).dim == 3
    assert Subspace.zero(3).dim == 0


def test_subspace_operations():
    left = Subspace.span(3, [E1, E2])
    right = Subspace.span(3, [E2, E3])
    assert left.sum(right) == Subspace.full(3)
    assert left.intersection_dim(right) == 1
    assert left.contains(Subspace.span(3, [(1, 1, 0)]))
    assert not left.contains(right)
    with pytest.raises(DomainError):
        left.sum(Subspace.zero(2))
    with pytest.raises(DomainError):
        Subspace.span(3, [(1, 0)])


def test_chain_reads_zero_below_and_top_above(flag):
    assert flag.length == 3
    assert flag.at(-1).dim == 0
    assert flag.at(7) == flag.top
    assert [step.dim for step in flag.shifted(1).steps] == [2, 3]


def test_chain_must_be_nested():
    with pytest.raises(DomainError, match="step 0"):
        FiltrationChain.from_vectors(2, [[(1, 0)], [(0, 1)]])
    with pytest.raises(DomainError):
        FiltrationChain.of(2, [])
    with pytest.raises(DomainError):
        FiltrationChain.of(2, [Subspace.zero(3)])


def test_comparable_examples(flag):
    assert comparable(flag, flag, 0)
    assert comparable(flag, flag.shifted(1), 1)
    assert not comparable(flag.shifted(1), flag, 0)
    with pytest.raises(DomainError):
        comparable(flag, flag, -1)
    with pytest.raises(DomainError):
        comparable(flag, FiltrationChain.of(2, [Subspace.zero(2)]), 0)


def test_interpolate_endpoints(flag):
    chains = interpolate(flag, flag, 1)
    assert len(chains) == 3
    assert chains[0].same_as(flag.shifted(1))
    assert chains[-1].same_as(flag.shifted(2))
    assert interpolation_failures(flag, flag, 1, chains) == []
    assert interpolate(flag, flag, 0)[0].same_as(flag)


def test_interpolate_rejects_incomparable_chains(flag):
    with pytest.raises(DomainError, match="not comparable"):
        interpolate(flag.shifted(1), flag, 0)


def test_graded_dims(flag):
    assert graded_dims(flag) == [1, 1, 1]
    assert sum(graded_dims(flag)) == flag.top.dim


def test_shift_lemma_on_a_flag(flag):
    partner = FiltrationChain.from_vectors(3, [[E1, E2], [E1, E2, E3], [E1, E2, E3]])
    report = shift_lemma_dims(flag, partner)
    assert report.passed
    assert report.kernel_dims == [0, 1, 1, 0, 0]
    assert report.cokernel_dims == [1, 1, 0, 0, 0]
    assert report.kernel_from_map == report.kernel_dims
    assert report.cokernel_from_map == report.cokernel_dims


def test_shift_lemma_names_the_failing_index(flag):
    with pytest.raises(DomainError, match="index 0"):
        shift_lemma_dims(flag, FiltrationChain.of(3, [Subspace.full(3)]))


@pytest.mark.parametrize("seed", range(5))
def test_random_partners(seed):
    rng = random.Random(seed)
    chain = random_chain(5, rng)
    for k in (0, 1, 2):
        assert comparable(chain, random_comparable_partner(chain, k, rng), k)
    assert shift_lemma_dims(chain, random_interleaved_partner(chain, rng)).passed


def test_random_chain_respects_length():
    assert random_chain(4, random.Random(3), length=5).length == 5


def test_filtration_suite():
    report = verify_filtration_lemmas(8, 100, seed=42)
    assert report.passed, report.failures[:5]
    assert report.checks["comparable"] == 100
    assert report.checks["shift-lemma"] == 100


def test_filtration_suite_is_reproducible():
    assert verify_filtration_lemmas(4, 10, seed=5) == verify_filtration_lemmas(4, 10, seed=5)


def test_filtration_suite_rejects_bad_arguments():
    with pytest.raises(DomainError):
        verify_filtration_lemmas(4, 0, seed=1)


def test_chain_text_format(flag):
    text = format_chain(flag)
    assert text == "dim 3\n1 0 0\n---\n1 0 0\n0 1 0\n---\n1 0 0\n0 1 0\n0 0 1\n"
    assert parse_chain(text) == flag


def test_parse_chain_with_comments():
    chain = parse_chain("# two steps\ndim 2\n1/2 1  # first\n---\n1 0\n0 1\n")
    assert [step.dim for step in chain.steps] == [1, 2]
    assert chain.steps[0].basis == ((1, 2),)


@pytest.mark.parametrize("text, position", [
    ("1 0 0\n", 0),
    ("dim 3\n1 x 0\n", 8),
    ("dim 3\n1 0\n", 6),
])
def test_parse_chain_errors(text, position):
    with pytest.raises(ParseError) as excinfo:
        parse_chain(text)
    assert excinfo.value.position == position


def test_parse_chain_rejects_non_nested_steps():
    with pytest.raises(DomainError):
        parse_chain("dim 2\n1 0\n---\n0 1\n")
