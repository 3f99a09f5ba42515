#!/usr/bin/env python3
"""Quantified structural checks over ambients and bare finite rings.

Violations are collected as data; nothing here raises on a failed check.
"""

from dataclasses import dataclass, field
from itertools import combinations
import logging
import random
from typing import Callable, List, Sequence, Union

from .ideal_lattice import (
    Ideal, all_ideals, colon, enumerate_overideals, ideal_generated, ideal_intersection,
    ideal_product, ideal_sum, is_idempotent, is_prime, is_primary, local_decomposition,
    stable_power, unit_ideal,
)
from .limits import limits
from .molecularize import (
    Ambient, absorbing_ideal, divides, is_molecule, is_unit_cancellative, molecularizations,
    verify_report,
)
from .oracles import (
    as_multisets, brute_force_divides, brute_force_factor_pairs, brute_force_molecularizations,
)
from .ring_core import FiniteRing

log = logging.getLogger(__name__)

EXHAUSTIVE_PAIRS = 32


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    violations: List[str] = field(default_factory=list)
    findings: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "passed": self.passed,
            "violations": self.violations,
            "findings": self.findings,
        }


@dataclass
class SuiteReport:
    subject: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def violation_count(self) -> int:
        return sum(len(c.violations) for c in self.checks)

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def _describe(I: Ideal) -> str:
    return f"ideal of index {I.index} generated by {[list(g) for g in I.generators]}"


def _pairs(items: Sequence[Ideal], rng: random.Random, trials: int):
    """All pairs when there are few items, otherwise ``trials`` random ones."""
    if len(items) <= EXHAUSTIVE_PAIRS:
        return list(combinations(items, 2)) + [(x, x) for x in items]
    return [(rng.choice(items), rng.choice(items)) for _ in range(trials)]


def _sandwich(result: CheckResult, pairs) -> None:
    for I, J in pairs:
        result.checked += 1
        product, meet, join = ideal_product(I, J), ideal_intersection(I, J), ideal_sum(I, J)
        if not (product <= meet and meet <= I and meet <= J and I <= join and J <= join):
            result.violations.append(f"sandwich fails for {_describe(I)} and {_describe(J)}")


# -- ambient checks ---------------------------------------------------------


def _maximal_law(amb: Ambient, result: CheckResult) -> None:
    for M in amb.maximal_over(amb.target):
        result.checked += 1
        if is_molecule(amb, M) == is_idempotent(M):
            result.violations.append(f"maximal {_describe(M)}: molecule status disagrees with idempotence")


def _molecule_characterization(amb: Ambient, proper: List[Ideal], result: CheckResult) -> None:
    for I in proper:
        result.checked += 1
        trivial = all(J == I or K == I for J, K in brute_force_factor_pairs(amb, I))
        expected = is_unit_cancellative(amb, I) and trivial
        if is_molecule(amb, I) != expected:
            result.violations.append(f"{_describe(I)}: molecule test disagrees with the pair scan")


def _prime_unit_cancellative(amb: Ambient, proper: List[Ideal], result: CheckResult) -> None:
    for P in proper:
        if not is_prime(P):
            continue
        result.checked += 1
        if is_unit_cancellative(amb, P) and not is_molecule(amb, P):
            result.violations.append(f"prime {_describe(P)} is unit-cancellative but compound")


def _comaximal_law(proper: List[Ideal], unit: Ideal, molecule: Callable[[Ideal], bool],
                   rng: random.Random, trials: int, result: CheckResult) -> None:
    molecules = [I for I in proper if molecule(I)]
    comaximal = [(J, K) for J, K in combinations(proper, 2) if ideal_sum(J, K) == unit]
    for I in molecules:
        for J, K in comaximal:
            if ideal_product(J, K) <= I:
                result.checked += 1
                if not (J <= I or K <= I):
                    result.violations.append(f"molecule {_describe(I)} contains a comaximal product "
                                             f"but neither factor")
        if len(proper) >= 3:
            for _ in range(trials // max(1, len(molecules))):
                J, K, L = rng.sample(proper, 3)
                if ideal_sum(J, K) != unit or ideal_sum(J, L) != unit or ideal_sum(K, L) != unit:
                    continue
                if ideal_product(ideal_product(J, K), L) <= I:
                    result.checked += 1
                    if not (J <= I or K <= I or L <= I):
                        result.violations.append(f"molecule {_describe(I)} fails on a comaximal triple")


def _molecules_primary(amb: Ambient, proper: List[Ideal], result: CheckResult) -> None:
    for I in proper:
        if is_molecule(amb, I):
            result.checked += 1
            if not is_primary(I):
                result.violations.append(f"molecule {_describe(I)} is not primary")


def _descent(amb: Ambient, report, result: CheckResult) -> None:
    result.checked += len(report.factorizations)
    result.violations.extend(verify_report(amb, report))
    if not report.finite:
        result.findings.append("factorizations are unbounded; witness recorded")


def _colon_oracle(amb: Ambient, rng: random.Random, trials: int, result: CheckResult) -> None:
    for X, Y in _pairs(list(amb.lattice), rng, trials):
        for J, I in ((X, Y), (Y, X)):
            if not I <= J:
                continue
            result.checked += 1
            if not ideal_product(J, colon(I, J)) <= I:
                result.violations.append(f"J(I:J) escapes I for {_describe(I)}")
            if divides(amb, J, I) != brute_force_divides(amb, J, I):
                result.violations.append(f"divisibility of {_describe(I)} disagrees with the oracle")


def _oracle_equivalence(amb: Ambient, report, result: CheckResult) -> None:
    result.checked += 1
    expected = brute_force_molecularizations(amb)
    if expected is None:
        if report.finite:
            result.violations.append("oracle found unbounded factorizations, engine did not")
        return
    if not report.finite or as_multisets(report.factorizations) != expected:
        result.violations.append(
            f"engine found {len(report.factorizations)} molecularizations, oracle {len(expected)}")


def _ring_divisor_count(R: FiniteRing, T: Ideal) -> int:
    return sum(1 for J in enumerate_overideals(R, T) if ideal_product(J, colon(T, J)) == T)


def _local_census(amb: Ambient, census, rng: random.Random, trials: int, result: CheckResult) -> None:
    A = amb.ring
    # a nil target lies in every maximal ideal, so they all show up in its lattice
    known = amb.maximal_over(amb.target) if stable_power(amb.target).is_zero else None
    factors = local_decomposition(A, known)
    over_product, divisor_product = 1, 1
    for f in factors:
        image = ideal_generated(f.factor, [f.projection.apply(g) for g in amb.target.generators])
        over_product *= len(enumerate_overideals(f.factor, image))
        divisor_product *= _ring_divisor_count(f.factor, image)
    result.checked += 1
    if over_product != census.superideals or divisor_product != len(census.divisors):
        result.violations.append(
            f"local censuses multiply to {over_product}/{divisor_product}, "
            f"global census is {census.superideals}/{len(census.divisors)}")
    for _ in range(trials):
        x = tuple(rng.randrange(d) for d in A.orders)
        if not any(x):
            continue
        result.checked += 1
        if not any(any(f.projection.apply(x)) for f in factors):
            result.violations.append(f"nonzero element {list(x)} vanishes in every local factor")
            break


def _dedekind_law(amb: Ambient, census, report, result: CheckResult) -> None:
    for M in census.molecules:
        result.checked += 1
        if not is_prime(M):
            result.violations.append(f"molecule {_describe(M)} of a Dedekind model is not prime")
    result.checked += 1
    if len(report.factorizations) != 1:
        result.violations.append(f"{len(report.factorizations)} molecularizations, expected exactly one")


def ambient_suite(amb: Ambient, seed: int = 0, trials: int = 200) -> SuiteReport:
    rng = random.Random(seed)
    suite = SuiteReport(f"{amb.label}: {amb.model}")
    proper = [I for I in amb.lattice if not I.is_unit]

    def run(name: str, body: Callable[[CheckResult], None]) -> None:
        result = CheckResult(name)
        body(result)
        suite.checks.append(result)
        log.info("%s / %s: %d checked, %d violations", amb.label, name,
                 result.checked, len(result.violations))

    report = molecularizations(amb)
    census = report.census
    run("maximal-ideal-law", lambda r: _maximal_law(amb, r))
    run("molecule-characterization", lambda r: _molecule_characterization(amb, proper, r))
    run("prime-unit-cancellative", lambda r: _prime_unit_cancellative(amb, proper, r))
    run("comaximal-law", lambda r: _comaximal_law(proper, amb.unit, lambda I: is_molecule(amb, I),
                                                  rng, trials, r))
    run("molecules-primary", lambda r: _molecules_primary(amb, proper, r))
    run("descent-bound", lambda r: _descent(amb, report, r))
    run("colon-divides-oracle", lambda r: _colon_oracle(amb, rng, trials, r))
    run("lattice-sandwich", lambda r: _sandwich(r, _pairs(list(amb.lattice), rng, trials)))
    if amb.ring.size <= limits.local_check_limit:
        run("oracle-equivalence", lambda r: _oracle_equivalence(amb, report, r))
        run("local-census", lambda r: _local_census(amb, census, rng, trials, r))
    if amb.dedekind:
        run("dedekind-law", lambda r: _dedekind_law(amb, census, report, r))
    return suite


# -- bare ring checks -------------------------------------------------------


def ring_suite(R: FiniteRing, seed: int = 0, trials: int = 200) -> SuiteReport:
    """Checks that hold in every finite ring, run with uncertified ambients.

    Ideals absorbed by a proper ideal are reported as findings: they are the
    expected counterexamples to unit-cancellativity, not violations.
    """
    rng = random.Random(seed)
    suite = SuiteReport(R.label)
    ideals = list(all_ideals(R))
    proper = [I for I in ideals if not I.is_zero and not I.is_unit]
    maximal = [M for M in proper if not any(M < J for J in proper)]

    law = CheckResult("maximal-ideal-law")
    for M in maximal:
        law.checked += 1
        amb = Ambient.uncertified(R, M)
        if is_molecule(amb, M) == is_idempotent(M):
            law.violations.append(f"maximal {_describe(M)}: molecule status disagrees with idempotence")
    suite.checks.append(law)

    primary = CheckResult("molecules-primary")
    cancellative = CheckResult("unit-cancellative")
    for I in proper:
        amb = Ambient.uncertified(R, I)
        absorbing = absorbing_ideal(amb, I)
        cancellative.checked += 1
        if absorbing is not None:
            cancellative.findings.append(
                f"{_describe(I)} equals its product with the proper {_describe(absorbing)}")
        if is_molecule(amb, I):
            primary.checked += 1
            if not is_primary(I):
                primary.violations.append(f"molecule {_describe(I)} is not primary")
    suite.checks.append(primary)
    suite.checks.append(cancellative)

    sandwich = CheckResult("lattice-sandwich")
    _sandwich(sandwich, _pairs(ideals, rng, trials))
    suite.checks.append(sandwich)

    targets = proper if len(proper) <= EXHAUSTIVE_PAIRS else rng.sample(proper, EXHAUSTIVE_PAIRS)
    ambients = [Ambient.uncertified(R, I) for I in targets]
    share = max(1, trials // max(1, len(ambients)))

    comaximal = CheckResult("comaximal-law")
    _comaximal_law(targets, unit_ideal(R), lambda I: is_molecule(Ambient.uncertified(R, I), I),
                   rng, trials, comaximal)
    suite.checks.append(comaximal)

    oracle = CheckResult("colon-divides-oracle")
    descent = CheckResult("descent-bound")
    local = CheckResult("local-census")
    for amb in ambients:
        _colon_oracle(amb, rng, share, oracle)
        report = molecularizations(amb)
        _descent(amb, report, descent)
        if R.size <= limits.local_check_limit:
            _local_census(amb, report.census, rng, share, local)
    suite.checks.extend([oracle, descent])
    if R.size <= limits.local_check_limit:
        suite.checks.append(local)
    return suite


def property_suite(subject: Union[Ambient, FiniteRing], seed: int = 0, trials: int = 200) -> SuiteReport:
    if isinstance(subject, FiniteRing):
        return ring_suite(subject, seed, trials)
    return ambient_suite(subject, seed, trials)
