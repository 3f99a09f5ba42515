#!/usr/bin/env python3
"""Divisibility, molecules and molecularizations inside a certified finite model.

An Ambient is a finite ring A = R/I0 together with the image of an ideal I of
R, where the builder has checked I0 in I^2. Products of ideals containing I
are then computed exactly in A, so every search below only ever multiplies
ideals that contain the target.
"""

from dataclasses import dataclass, field
from functools import cached_property
import concurrent.futures
import logging
from typing import List, Optional, Sequence, Tuple

from .errors import PreconditionViolation, RingMismatch
from .ideal_lattice import (
    Ideal, colon, enumerate_overideals, ideal_product, unit_ideal,
)
from .limits import limits
from .ring_core import FiniteRing, RingHom

log = logging.getLogger(__name__)

Factorization = Tuple[Ideal, ...]


@dataclass(frozen=True, eq=False)
class Ambient:
    """A certified finite model of a domain together with the ideal under study."""

    label: str
    ring: FiniteRing
    target: Ideal
    model: str = ""
    certificate: str = ""
    certified: bool = True
    dedekind: bool = False
    # polynomial ring the model is a quotient of, or overring it is a subring of
    cover: Optional[RingHom] = None
    overring: Optional[RingHom] = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.target.ring is not self.ring:
            raise RingMismatch("target ideal lives in a different ring")
        if self.target.is_zero or self.target.is_unit:
            raise PreconditionViolation("the target must be a nonzero proper ideal")

    @classmethod
    def uncertified(cls, ring: FiniteRing, target: Ideal, label: str = "raw") -> "Ambient":
        """Wrap a bare finite ring; verdicts then describe the ring itself, not a domain."""
        return cls(label, ring, target, model=ring.label, certified=False)

    @cached_property
    def lattice(self) -> Tuple[Ideal, ...]:
        return enumerate_overideals(self.ring, self.target)

    @cached_property
    def unit(self) -> Ideal:
        return unit_ideal(self.ring)

    def over(self, J: Ideal) -> List[Ideal]:
        """Ideals containing J, read off the target's over-ideal lattice."""
        self.require(J)
        return [K for K in self.lattice if J <= K]

    def maximal_over(self, J: Ideal) -> List[Ideal]:
        proper = [K for K in self.over(J) if not K.is_unit]
        return [M for M in proper if not any(M < K for K in proper)]

    def require(self, J: Ideal) -> None:
        if J.ring is not self.ring:
            raise RingMismatch(f"ideal of {J.ring.label} used in ambient {self.label}")
        if not self.target <= J:
            raise PreconditionViolation(
                f"ideal does not contain the target of {self.label}; products would not be exact")

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "model": self.model,
            "ring_size": self.ring.size,
            "certificate": self.certificate,
            "certified": self.certified,
            "params": {k: v for k, v in sorted(self.params.items())},
        }


@dataclass
class DivisorCensus:
    target: Ideal
    divisors: List[Ideal]
    molecules: List[Ideal]
    superideals: int

    @property
    def counts(self) -> Tuple[int, int]:
        return len(self.divisors), len(self.molecules)


@dataclass
class MolecularizationReport:
    target: Ideal
    factorizations: List[Factorization]
    finite: bool
    unit_cancellative: bool
    length_bound: int
    witness: Optional[Tuple[Ideal, Ideal]] = None
    census: Optional[DivisorCensus] = None
    notes: List[str] = field(default_factory=list)


def _require_nonzero_proper(amb: Ambient, I: Ideal) -> None:
    amb.require(I)
    if I.is_zero or I.is_unit:
        raise PreconditionViolation("molecules are nonzero proper ideals")


def divides(amb: Ambient, J: Ideal, I: Ideal) -> bool:
    """J divides I iff J * (I : J) == I; J must contain I."""
    amb.require(I)
    if J.ring is not amb.ring:
        raise RingMismatch(f"ideal of {J.ring.label} used in ambient {amb.label}")
    if not I <= J:
        raise PreconditionViolation("a divisor must contain the ideal it divides")
    return ideal_product(J, colon(I, J)) == I


def absorbing_ideal(amb: Ambient, I: Ideal) -> Optional[Ideal]:
    """A proper J containing I with I*J == I, or None when I is unit-cancellative.

    If some proper J absorbs I then so does every maximal ideal above J, so only
    the maximal over-ideals are tried.
    """
    if I.is_zero:
        raise PreconditionViolation("unit-cancellativity is defined for nonzero ideals")
    for M in amb.maximal_over(I):
        if ideal_product(I, M) == I:
            return M
    return None


def is_unit_cancellative(amb: Ambient, I: Ideal) -> bool:
    return absorbing_ideal(amb, I) is None


def molecule_witness(amb: Ambient, I: Ideal) -> Optional[Tuple[Ideal, Ideal]]:
    """Proper ideals (J, K) with J*K == I, or None when I is a molecule."""
    _require_nonzero_proper(amb, I)
    absorbing = absorbing_ideal(amb, I)
    if absorbing is not None:
        return I, absorbing
    for J in amb.over(I):
        if J == I or J.is_unit:
            continue
        if divides(amb, J, I):
            return J, colon(I, J)
    return None


def is_molecule(amb: Ambient, I: Ideal) -> bool:
    return molecule_witness(amb, I) is None


def divisor_census(amb: Ambient, I: Optional[Ideal] = None) -> DivisorCensus:
    I = amb.target if I is None else I
    amb.require(I)
    over = amb.over(I)
    divisors = [J for J in over if divides(amb, J, I)]
    molecules = [J for J in divisors if not J.is_unit and is_molecule(amb, J)]
    log.debug("census in %s: %d superideals, %d divisors, %d molecules",
              amb.label, len(over), len(divisors), len(molecules))
    return DivisorCensus(I, divisors, molecules, len(over))


def length_bound(I: Ideal) -> int:
    """floor(log2 [A : I]); a strictly descending chain of subgroups at least halves each step."""
    return I.index.bit_length() - 1


def _extend(amb: Ambient, I: Ideal, molecules: Sequence[Ideal], start: int,
            partial: Ideal, chosen: Factorization, depth_left: int) -> List[Factorization]:
    found: List[Factorization] = []
    for idx in range(start, len(molecules)):
        M = molecules[idx]
        candidate = ideal_product(partial, M)
        if not I <= candidate:
            continue
        if candidate == I:
            found.append(chosen + (M,))
            continue
        if depth_left <= 1 or candidate == partial:
            continue
        if divides(amb, candidate, I):
            found.extend(_extend(amb, I, molecules, idx, candidate, chosen + (M,), depth_left - 1))
    return found


def molecularizations(amb: Ambient, I: Optional[Ideal] = None,
                      workers: Optional[int] = None) -> MolecularizationReport:
    """Every multiset of molecules whose product is I.

    Factors are taken in nondecreasing canonical order so each multiset comes
    out once. When some divisor of I is absorbed by a proper ideal the number
    of factorizations is unbounded; the report is then marked non-finite with
    the absorbing pair instead.
    """
    I = amb.target if I is None else I
    _require_nonzero_proper(amb, I)
    census = divisor_census(amb, I)
    bound = length_bound(I)
    unit_cancellative = is_unit_cancellative(amb, I)

    for D in census.divisors:
        if D.is_unit:
            continue
        absorbing = absorbing_ideal(amb, D)
        if absorbing is not None:
            log.warning("%s: a divisor is absorbed by a proper ideal; factorizations are unbounded",
                        amb.label)
            return MolecularizationReport(I, [], False, unit_cancellative, bound,
                                          witness=(D, absorbing), census=census)

    molecules = sorted(census.molecules, key=Ideal.sort_key)
    workers = workers or limits.workers

    def from_first(idx: int) -> List[Factorization]:
        M = molecules[idx]
        if M == I:
            return [(M,)]
        if bound <= 1:
            return []
        return [(M,) + rest for rest in _extend(amb, I, molecules, idx, M, (), bound - 1)]

    results: List[Factorization] = []
    if workers > 1 and len(molecules) > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=min(workers, len(molecules))) as executor:
            futures = [executor.submit(from_first, idx) for idx in range(len(molecules))]
            for future in concurrent.futures.as_completed(futures):
                results.extend(future.result())
    else:
        for idx in range(len(molecules)):
            results.extend(from_first(idx))

    results.sort(key=lambda fac: tuple(J.sort_key() for J in fac))
    return MolecularizationReport(I, results, True, unit_cancellative, bound, census=census,
                                  notes=["verified for the examined ideals"])


def product_of(amb: Ambient, factors: Sequence[Ideal]) -> Ideal:
    result = amb.unit
    for J in factors:
        result = ideal_product(result, J)
    return result


def verify_report(amb: Ambient, report: MolecularizationReport) -> List[str]:
    """Soundness checks on a report; returns the list of problems found."""
    problems = []
    seen = set()
    for fac in report.factorizations:
        key = tuple(J.rows for J in fac)
        if key in seen:
            problems.append(f"duplicate factorization of length {len(fac)}")
        seen.add(key)
        if product_of(amb, fac) != report.target:
            problems.append(f"factorization of length {len(fac)} does not multiply to the target")
        if len(fac) > report.length_bound:
            problems.append(f"factorization of length {len(fac)} exceeds bound {report.length_bound}")
        for J in fac:
            if not is_molecule(amb, J):
                problems.append("a factor is not a molecule")
    return problems
