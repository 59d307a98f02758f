"""Catalogue of basic unitary representations used for regression runs.

Entries are keyed by their printed expression. The real catalogue covers
characters, Stein, Speh and Speh complementary series of total size at most
8 with k <= 4, s in {1/4, 1/3} and twists t in {0, 1}; the complex catalogue
keeps the two families that exist over C.
"""

import logging
import random
from fractions import Fraction
from typing import Dict, List

from src.reps import (
    CharacterRep,
    FieldName,
    RepExpr,
    SpehCSRep,
    SpehRep,
    SteinRep,
    product,
)
from src.scalars import ExactComplex

# Configure logging
logger = logging.getLogger(__name__)

# Constants
MAX_SIZE = 8
MAX_K = 4
S_VALUES = (Fraction(1, 4), Fraction(1, 3))
T_VALUES = (Fraction(0), Fraction(1))
Z_VALUES = (ExactComplex(), ExactComplex(im=Fraction(1)))


def basic_catalogue(max_size: int = MAX_SIZE, field: FieldName = "R") -> Dict[str, RepExpr]:
    """
    Enumerate single-factor expressions of size at most ``max_size``.

    Args:
        max_size: Largest group size n of an entry
        field: "R" for all four families, "C" for characters and Stein only

    Returns:
        Mapping from printed expression to expression, in enumeration order
    """
    factors: List[object] = []
    eps_values = (0, 1)
    for n in range(1, max_size + 1):
        for eps in eps_values:
            for z in Z_VALUES:
                factors.append(CharacterRep(n=n, eps=eps, z=z))
    for m in range(1, max_size // 2 + 1):
        for s in S_VALUES:
            for eps in eps_values:
                for t in T_VALUES:
                    factors.append(SteinRep(m=m, s=s, eps=eps, t=t))
    if field == "R":
        for m in range(1, max_size // 2 + 1):
            for k in range(1, MAX_K + 1):
                for t in T_VALUES:
                    factors.append(SpehRep(m=m, k=k, t=t))
        for m in range(1, max_size // 4 + 1):
            for k in range(1, MAX_K + 1):
                for s in S_VALUES:
                    for t in T_VALUES:
                        factors.append(SpehCSRep(m=m, k=k, s=s, t=t))

    catalogue: Dict[str, RepExpr] = {}
    for factor in factors:
        expr = RepExpr(field=field, factors=(factor,))
        catalogue[str(expr)] = expr
    logger.debug(f"Built {field} catalogue with {len(catalogue)} entries")
    return catalogue


CATALOGUE: Dict[str, RepExpr] = basic_catalogue()


def get_catalogue_entry(name: str) -> RepExpr:
    """
    Get a catalogue entry by its printed expression.

    Raises:
        KeyError: If the entry is not in the real catalogue
    """
    if name not in CATALOGUE:
        raise KeyError(f"Catalogue entry '{name}' not found. {len(CATALOGUE)} entries available")
    return CATALOGUE[name]


def list_catalogue() -> List[str]:
    """List all catalogue entry names."""
    return list(CATALOGUE.keys())


def random_product(rng: random.Random, max_size: int = 40, field: FieldName = "R") -> RepExpr:
    """
    Random product of catalogue factors with total size at most ``max_size``.

    The result always has at least one factor; sizes are drawn until the next
    factor would overflow ``max_size`` or a stop coin comes up.
    """
    entries = list(basic_catalogue(field=field).values()) if field != "R" else list(CATALOGUE.values())
    result = rng.choice([entry for entry in entries if entry.n <= max_size])
    while rng.random() < 0.8:
        candidates = [entry for entry in entries if result.n + entry.n <= max_size]
        if not candidates:
            break
        result = product(result, rng.choice(candidates))
    return result
