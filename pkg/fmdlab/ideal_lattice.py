#!/usr/bin/env python3
"""Ideals of finite rings: canonical form, arithmetic, lattice enumeration, predicates."""

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import PreconditionViolation, RingMismatch
from .limits import CACHE_SIZE, check_size, limits
from .normal_forms import Row, howell_form, kernel_part, pivot_columns, reduce_vector, span_size
from .ring_core import Coefficient, FiniteRing, RingHom, quotient_by_ideal

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ideal:
    """An ideal stored as the Howell form of its embedded additive group.

    Equality of ideals is equality of ``rows``.
    """

    ring: FiniteRing
    rows: Tuple[Row, ...]

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        return pivot_columns(self.rows)

    @cached_property
    def size(self) -> int:
        return span_size(self.rows, self.ring.char)

    @property
    def index(self) -> int:
        return self.ring.size // self.size

    @property
    def is_zero(self) -> bool:
        return not self.rows

    @property
    def is_unit(self) -> bool:
        return self.size == self.ring.size

    def contains(self, x: Coefficient) -> bool:
        return self._holds(self.ring.embed(self.ring.coords_of(x)))

    def _holds(self, vector: Sequence[int]) -> bool:
        remainder, _ = reduce_vector(vector, self.rows, self.ring.char, self.pivots)
        return not any(remainder)

    def __le__(self, other: "Ideal") -> bool:
        _check_same(self, other)
        return all(other._holds(row) for row in self.rows)

    def __lt__(self, other: "Ideal") -> bool:
        return self <= other and self != other

    @property
    def additive_generators(self) -> List[Row]:
        return [self.ring.unembed(row) for row in self.rows]

    @cached_property
    def generators(self) -> Tuple[Row, ...]:
        """A small ideal-generating set, picked greedily from the additive generators."""
        chosen: List[Row] = []
        current = zero_ideal(self.ring)
        for vec in self.additive_generators:
            if current.contains(vec):
                continue
            chosen.append(vec)
            current = ideal_generated(self.ring, chosen)
            if current == self:
                break
        return tuple(chosen)

    def sort_key(self) -> Tuple[Row, ...]:
        return self.rows

    def to_json(self) -> dict:
        return {
            "ring": self.ring.label,
            "rows": [list(row) for row in self.rows],
            "generators": [list(g) for g in self.generators],
            "index": self.index,
        }

    def __repr__(self) -> str:
        gens = ", ".join(str(list(g)) for g in self.generators)
        return f"Ideal({self.ring.label}: {gens or '0'})"


@dataclass(frozen=True)
class LocalFactor:
    factor: FiniteRing
    projection: RingHom
    maximal: Ideal
    stable_power: Ideal


def _check_same(I: Ideal, J: Ideal) -> None:
    if I.ring is not J.ring:
        raise RingMismatch(f"ideals of {I.ring.label} and {J.ring.label}")


def _canonical(R: FiniteRing, vectors: Sequence[Sequence[int]]) -> Ideal:
    return Ideal(R, howell_form(vectors, R.char, R.rank))


def ideal_generated(R: FiniteRing, gens: Sequence[Coefficient] = ()) -> Ideal:
    """Smallest ideal containing ``gens``: the additive span of g * e_i."""
    vectors = []
    for g in gens:
        x = R.coords_of(g)
        vectors.extend(R.embed(R.multiply(x, R.basis(i))) for i in range(R.rank))
    return _canonical(R, vectors)


def ideal_from_additive(R: FiniteRing, vectors: Sequence[Sequence[int]], check: bool = True) -> Ideal:
    """Canonical ideal from an additive spanning set that is already an ideal."""
    ideal = _canonical(R, [R.embed(R._reduce(v)) for v in vectors])
    if check:
        for vec in ideal.additive_generators:
            for i in range(R.rank):
                if not ideal.contains(R.multiply(vec, R.basis(i))):
                    raise PreconditionViolation("additive span is not closed under multiplication")
    return ideal


def zero_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, ())


def unit_ideal(R: FiniteRing) -> Ideal:
    return ideal_generated(R, [R.one])


@lru_cache(maxsize=CACHE_SIZE)
def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check_same(I, J)
    return Ideal(I.ring, howell_form(I.rows + J.rows, I.ring.char, I.ring.rank))


@lru_cache(maxsize=CACHE_SIZE)
def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    _check_same(I, J)
    R = I.ring
    n = R.rank
    block = [list(row) + list(row) for row in I.rows] + [list(row) + [0] * n for row in J.rows]
    meet = kernel_part(howell_form(block, R.char, 2 * n), n)
    return Ideal(R, howell_form(meet, R.char, n))


@lru_cache(maxsize=CACHE_SIZE)
def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    """I*J as the additive span of products of additive generators."""
    _check_same(I, J)
    R = I.ring
    left, right = I.additive_generators, J.additive_generators
    return _canonical(R, [R.embed(R.multiply(a, b)) for a in left for b in right])


def _quotient(I: Ideal):
    return quotient_by_ideal(I.ring, I)


def _pullback(I: Ideal, projection: RingHom, vectors: Sequence[Row]) -> Ideal:
    R = I.ring
    lifts = [R.embed(projection.preimage(v)) for v in vectors]
    return Ideal(R, howell_form(list(I.rows) + lifts, R.char, R.rank))


@lru_cache(maxsize=CACHE_SIZE)
def colon(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {x : xJ in I}, solved as an annihilator in R/I and pulled back."""
    _check_same(I, J)
    R = I.ring
    if I.is_unit or J <= I:
        return unit_ideal(R)
    Q, proj = _quotient(I)
    images = [proj.apply(g) for g in J.generators]
    images = [y for y in images if any(y)]
    q, r = Q.char, Q.rank
    width = (len(images) + 1) * r
    block = []
    for i in range(r):
        b = Q.basis(i)
        row: List[int] = []
        for y in images:
            row.extend(Q.embed(Q.multiply(b, y)))
        row.extend(Q.embed(b))
        block.append(row)
    annihilator = kernel_part(howell_form(block, q, width), len(images) * r)
    return _pullback(I, proj, [Q.unembed(v) for v in annihilator])


def _principal_ideals(R: FiniteRing) -> List[Ideal]:
    seen: Dict[Tuple[Row, ...], Ideal] = {}
    for x in R.elements():
        if any(x):
            ideal = ideal_generated(R, [x])
            seen.setdefault(ideal.rows, ideal)
    return sorted(seen.values(), key=Ideal.sort_key)


def _ideals_of(R: FiniteRing) -> List[Ideal]:
    """Every ideal of R, closing {0} under sums with principal ideals breadth first."""
    principal = _principal_ideals(R)
    start = zero_ideal(R)
    found = {start.rows: start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for p in principal:
            if p <= current:
                continue
            bigger = ideal_sum(current, p)
            if bigger.rows not in found:
                found[bigger.rows] = bigger
                queue.append(bigger)
    return list(found.values())


@lru_cache(maxsize=CACHE_SIZE)
def enumerate_overideals(R: FiniteRing, I: Ideal) -> Tuple[Ideal, ...]:
    """All ideals J of R with J containing I, sorted by canonical form."""
    if I.ring is not R:
        raise RingMismatch(f"ideal of {I.ring.label} used with {R.label}")
    Q, proj = _quotient(I)
    check_size(Q.size, f"over-ideals of an ideal of {R.label} (quotient size)")
    result = [_pullback(I, proj, K.additive_generators) for K in _ideals_of(Q)]
    result.sort(key=Ideal.sort_key)
    log.debug("%d over-ideals of an ideal of index %d in %s", len(result), I.index, R.label)
    return tuple(result)


def all_ideals(R: FiniteRing) -> Tuple[Ideal, ...]:
    return enumerate_overideals(R, zero_ideal(R))


def is_proper(I: Ideal) -> bool:
    return not I.is_unit


def is_maximal(I: Ideal) -> bool:
    return is_proper(I) and len(enumerate_overideals(I.ring, I)) == 2


def is_prime(I: Ideal) -> bool:
    """R/I has no zero divisors (a finite domain is a field, so this is maximality)."""
    if not is_proper(I):
        return False
    Q, _ = _quotient(I)
    if Q.size > limits.prime_scan_limit:
        return is_maximal(I)
    for x in Q.elements():
        if any(x) and not Q.is_unit(x):
            return False
    return True


def _is_nilpotent(Q: FiniteRing, x: Row) -> bool:
    return not any(Q.power(x, max(1, Q.size.bit_length())))


def is_primary(I: Ideal) -> bool:
    """Every zero divisor of R/I is nilpotent; in a finite ring the zero divisors are the non-units."""
    if not is_proper(I):
        return False
    Q, _ = _quotient(I)
    for x in Q.elements():
        if not Q.is_unit(x) and not _is_nilpotent(Q, x):
            return False
    return True


def is_idempotent(I: Ideal) -> bool:
    return ideal_product(I, I) == I


@lru_cache(maxsize=CACHE_SIZE)
def radical(I: Ideal) -> Ideal:
    Q, proj = _quotient(I)
    nilpotent = [x for x in Q.elements() if _is_nilpotent(Q, x)]
    return _pullback(I, proj, nilpotent)


def maximal_ideals(R: FiniteRing) -> List[Ideal]:
    proper = [J for J in all_ideals(R) if is_proper(J)]
    return [M for M in proper if not any(M < J for J in proper)]


def stable_power(M: Ideal) -> Ideal:
    """M^k for k large enough that M^(k+1) == M^k."""
    power = M
    while True:
        following = ideal_product(power, M)
        if following == power:
            return power
        power = following


def local_decomposition(R: FiniteRing, maximal: Optional[Sequence[Ideal]] = None) -> List[LocalFactor]:
    """Split R into the local rings R/M^inf, one per maximal ideal M.

    ``maximal`` may supply the maximal ideals when they are already known, e.g.
    as the maximal over-ideals of a nil ideal.
    """
    if maximal is None:
        check_size(R.size, f"local decomposition of {R.label}")
        maximal = maximal_ideals(R)
    factors = []
    for M in maximal:
        P = stable_power(M)
        factor, projection = quotient_by_ideal(R, P)
        factors.append(LocalFactor(factor, projection, M, P))
    total = 1
    for f in factors:
        total *= f.factor.size
    if total != R.size:
        raise RuntimeError(f"local factors of {R.label} have {total} elements, expected {R.size}")
    log.debug("%s splits into %d local factors", R.label, len(factors))
    return factors


def clear_caches() -> None:
    """Drop memoized ideal arithmetic and quotients so finished rings can be freed."""
    for cached in (ideal_sum, ideal_intersection, ideal_product, colon, enumerate_overideals,
                   radical, quotient_by_ideal):
        cached.cache_clear()
