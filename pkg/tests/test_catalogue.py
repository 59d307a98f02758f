import random

import pytest

from src.catalogue import CATALOGUE, basic_catalogue, get_catalogue_entry, list_catalogue, random_product
from src.derivatives import adduce
from src.reps import CharacterRep, SteinRep, associated_partition, depth, validate


def test_real_catalogue_size():
    assert len(CATALOGUE) == 128
    assert len(list_catalogue()) == 128
    assert all(entry.n <= 8 for entry in CATALOGUE.values())


def test_complex_catalogue_keeps_characters_and_stein():
    entries = basic_catalogue(field="C")
    assert len(entries) == 64
    for entry in entries.values():
        assert entry.field == "C"
        assert isinstance(entry.factors[0], (CharacterRep, SteinRep))


def test_catalogue_entries_are_valid_and_keyed_by_text():
    for name, entry in CATALOGUE.items():
        assert validate(entry).valid
        assert str(entry) == name


def test_get_catalogue_entry():
    entry = get_catalogue_entry("speh(2,3)")
    assert depth(entry) == 2
    with pytest.raises(KeyError, match="not found"):
        get_catalogue_entry("speh(9,1)")


def test_catalogue_regression():
    """Every entry: the partition is a rectangle and adducing drops one row."""
    for entry in CATALOGUE.values():
        ap = associated_partition(entry)
        assert len(set(ap.parts)) == 1
        assert depth(entry) == ap.largest_part
        assert associated_partition(adduce(entry)) == ap.tail()


def test_random_product_is_seeded_and_bounded():
    first = [random_product(random.Random(7), max_size=12) for _ in range(3)]
    second = [random_product(random.Random(7), max_size=12) for _ in range(3)]
    assert first == second
    rng = random.Random(11)
    for _ in range(50):
        e = random_product(rng, max_size=12)
        assert 1 <= len(e.factors)
        assert e.n <= 12
