import pytest

from fmdlab.constructions import build_cusp, build_integers, build_quadratic
from fmdlab.errors import PreconditionViolation, RingMismatch
from fmdlab.ideal_lattice import ideal_generated, ideal_product
from fmdlab.molecularize import (
    Ambient, MolecularizationReport, absorbing_ideal, divides, divisor_census,
    is_molecule, is_unit_cancellative, length_bound, molecularizations, molecule_witness,
    product_of, verify_report,
)
from fmdlab.oracles import (
    as_multisets, brute_force_divides, brute_force_is_molecule, brute_force_molecularizations,
)
from fmdlab.ring_core import direct_product, make_zmod


def _principal(amb, n):
    return ideal_generated(amb.ring, [n])


def test_every_divisor_of_twelve_divides(integers12):
    target = integers12.target
    for d in (1, 2, 3, 4, 6, 12):
        J = _principal(integers12, d)
        assert divides(integers12, J, target)
        assert brute_force_divides(integers12, J, target)


def test_divides_needs_containment(integers12):
    with pytest.raises(PreconditionViolation):
        divides(integers12, _principal(integers12, 4), _principal(integers12, 2))


def test_ideals_below_the_target_are_rejected(integers12):
    with pytest.raises(PreconditionViolation):
        is_molecule(integers12, _principal(integers12, 24))
    with pytest.raises(PreconditionViolation):
        divisor_census(integers12, _principal(integers12, 36))


def test_ideals_of_another_ring_are_rejected(integers12):
    stray = ideal_generated(make_zmod(144), [2])
    with pytest.raises(RingMismatch):
        integers12.require(stray)


def test_molecules_need_nonzero_proper_ideals(integers12):
    with pytest.raises(PreconditionViolation):
        molecule_witness(integers12, integers12.unit)


def test_ambient_rejects_degenerate_targets():
    R = make_zmod(4)
    with pytest.raises(PreconditionViolation):
        Ambient.uncertified(R, ideal_generated(R, [1]))
    with pytest.raises(PreconditionViolation):
        Ambient.uncertified(R, ideal_generated(R, [0]))


def test_census_of_twelve(integers12):
    census = divisor_census(integers12)
    assert census.superideals == 6
    assert census.counts == (6, 2)
    assert {J.index for J in census.molecules} == {2, 3}


def test_molecules_of_twelve(integers12):
    assert is_molecule(integers12, _principal(integers12, 2))
    assert is_molecule(integers12, _principal(integers12, 3))
    assert not is_molecule(integers12, _principal(integers12, 4))
    J, K = molecule_witness(integers12, integers12.target)
    assert ideal_product(J, K) == integers12.target
    assert not J.is_unit and not K.is_unit


def test_molecule_predicate_matches_pair_search(integers12):
    for J in integers12.lattice:
        if not J.is_unit:
            assert is_molecule(integers12, J) == brute_force_is_molecule(integers12, J)


def test_unique_molecularization_of_twelve(integers12):
    report = molecularizations(integers12)
    assert report.finite
    assert report.unit_cancellative
    assert report.length_bound == 3
    assert len(report.factorizations) == 1
    assert sorted(J.index for J in report.factorizations[0]) == [2, 2, 3]
    assert verify_report(integers12, report) == []


def test_engine_matches_brute_force_oracle():
    amb = build_integers(60)
    report = molecularizations(amb)
    assert as_multisets(report.factorizations) == brute_force_molecularizations(amb)


def test_cusp_square_target_agrees_with_exhaustive_search():
    amb = build_cusp(2, 10, (2,))
    assert is_molecule(amb, amb.target)
    assert brute_force_is_molecule(amb, amb.target)
    report = molecularizations(amb)
    assert len(report.factorizations) == 1
    assert as_multisets(report.factorizations) == brute_force_molecularizations(amb)


def test_worker_count_does_not_change_result():
    amb = build_integers(60)
    serial = molecularizations(amb, workers=1)
    threaded = molecularizations(amb, workers=2)
    assert [[J.rows for J in f] for f in serial.factorizations] == \
        [[J.rows for J in f] for f in threaded.factorizations]


def test_length_bound():
    amb = build_integers(2)
    assert length_bound(amb.target) == 1
    assert length_bound(build_integers(16).target) == 4


def test_product_of(integers12):
    assert product_of(integers12, []) == integers12.unit
    parts = [_principal(integers12, 2), _principal(integers12, 2), _principal(integers12, 3)]
    assert product_of(integers12, parts) == integers12.target


def test_verify_report_flags_bad_factorizations(integers12):
    good = molecularizations(integers12)
    fac = good.factorizations[0]
    bad = MolecularizationReport(good.target, [fac, fac, fac[:2]], True, True, good.length_bound)
    problems = verify_report(integers12, bad)
    assert any("duplicate" in p for p in problems)
    assert any("does not multiply" in p for p in problems)


def test_idempotent_ideal_in_product_ring():
    F2 = make_zmod(2)
    R = direct_product(F2, F2)
    I = ideal_generated(R, [(1, 0)])
    amb = Ambient.uncertified(R, I)
    assert absorbing_ideal(amb, I) == I
    assert not is_unit_cancellative(amb, I)
    assert molecule_witness(amb, I) == (I, I)
    report = molecularizations(amb)
    assert not report.finite
    assert report.factorizations == []
    assert report.witness == (I, I)
    assert brute_force_molecularizations(amb) is None


def test_quadratic_six_splits_into_four_primes():
    amb = build_quadratic(-5, [6])
    A = amb.ring
    assert A.size == 1296
    P2 = ideal_generated(A, [(2, 0), (1, 1)])
    P3 = ideal_generated(A, [(3, 0), (1, 1)])
    P3c = ideal_generated(A, [(3, 0), (1, -1)])
    report = molecularizations(amb)
    assert as_multisets(report.factorizations) == as_multisets([(P2, P2, P3, P3c)])
    assert verify_report(amb, report) == []


def test_quadratic_prime_above_two():
    amb = build_quadratic(-5, [2, (1, 1)])
    assert amb.ring.size == 16
    assert amb.target.index == 2
    assert is_molecule(amb, amb.target)
    report = molecularizations(amb)
    assert [len(f) for f in report.factorizations] == [1]
