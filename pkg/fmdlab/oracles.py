#!/usr/bin/env python3
"""Brute-force counterparts of the molecularize routines.

These scan ideal pairs directly and never use colon ideals, so they serve as
an independent check of the engine on small ambients.
"""

from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .ideal_lattice import Ideal, ideal_product
from .molecularize import Ambient

RowsMultiset = Tuple[Tuple, ...]


def brute_force_divides(amb: Ambient, J: Ideal, I: Ideal) -> bool:
    """Some K containing I has J * K == I."""
    return any(ideal_product(J, K) == I for K in amb.over(I))


def _proper_over(amb: Ambient, I: Ideal) -> List[Ideal]:
    return [J for J in amb.over(I) if not J.is_unit]


def brute_force_factor_pairs(amb: Ambient, I: Ideal) -> List[Tuple[Ideal, Ideal]]:
    """All unordered pairs (J, K) of proper ideals containing I with J * K == I."""
    proper = _proper_over(amb, I)
    pairs = []
    for a, J in enumerate(proper):
        for K in proper[a:]:
            if ideal_product(J, K) == I:
                pairs.append((J, K))
    return pairs


def brute_force_is_molecule(amb: Ambient, I: Ideal) -> bool:
    return not brute_force_factor_pairs(amb, I)


def as_multisets(factorizations: Sequence[Sequence[Ideal]]) -> Set[RowsMultiset]:
    return {tuple(sorted(J.rows for J in fac)) for fac in factorizations}


def brute_force_molecularizations(amb: Ambient, I: Optional[Ideal] = None) -> Optional[Set[RowsMultiset]]:
    """All molecularizations by recursive pair splitting I = J * K.

    Returns None when some ideal above I absorbs a proper factor (I = I * K),
    where the set of factorizations is unbounded.
    """
    I = amb.target if I is None else I
    memo: Dict[Tuple, FrozenSet[RowsMultiset]] = {}
    unbounded = []

    def split(X: Ideal) -> FrozenSet[RowsMultiset]:
        if X.rows in memo:
            return memo[X.rows]
        pairs = brute_force_factor_pairs(amb, X)
        found: Set[RowsMultiset] = set()
        if not pairs:
            found.add((X.rows,))
        for J, K in pairs:
            if J == X or K == X:
                unbounded.append(X)
                continue
            for left in split(J):
                for right in split(K):
                    found.add(tuple(sorted(left + right)))
        memo[X.rows] = frozenset(found)
        return memo[X.rows]

    result = set(split(I))
    return None if unbounded else result
