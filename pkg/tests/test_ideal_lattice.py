import json

import pytest

from fmdlab.errors import PreconditionViolation, RingMismatch, SizeGuardExceeded
from fmdlab.ideal_lattice import (
    all_ideals, clear_caches, colon, enumerate_overideals, ideal_from_additive, ideal_generated,
    ideal_intersection, ideal_product, ideal_sum, is_idempotent, is_maximal, is_primary, is_prime,
    is_proper, local_decomposition, maximal_ideals, radical, stable_power, unit_ideal, zero_ideal,
)
from fmdlab.limits import CACHE_SIZE, configure
from fmdlab.ring_core import direct_product, make_zmod, poly_quotient, quotient_by_ideal


def _principal(R, n):
    return ideal_generated(R, [n])


def test_principal_ideals_of_z144(z144):
    I = _principal(z144, 12)
    assert I.size == 12
    assert I.index == 12
    assert I == _principal(z144, 60)
    assert I.contains(36)
    assert not I.contains(6)


def test_generators_are_minimal(z144):
    I = ideal_sum(_principal(z144, 18), _principal(z144, 8))
    assert I == _principal(z144, 2)
    assert len(I.generators) == 1


def test_canonical_form_ignores_generator_order(z144):
    a = ideal_generated(z144, [18, 8, 27])
    b = ideal_generated(z144, [27, 18, 8])
    assert a == b
    assert a.rows == b.rows


def test_ideal_rows_are_json_ready(z144):
    I = ideal_generated(z144, [12, 18])
    assert json.loads(json.dumps(I.rows)) == [[6]]


def test_zero_and_unit(z144):
    assert zero_ideal(z144).is_zero
    assert zero_ideal(z144).size == 1
    assert unit_ideal(z144).is_unit
    assert _principal(z144, 5).is_unit
    assert not is_proper(unit_ideal(z144))


def test_arithmetic_in_z144(z144):
    I, J = _principal(z144, 12), _principal(z144, 18)
    assert ideal_sum(I, J) == _principal(z144, 6)
    assert ideal_intersection(I, J) == _principal(z144, 36)
    assert ideal_product(I, J) == _principal(z144, 72)
    assert colon(_principal(z144, 12), _principal(z144, 2)) == _principal(z144, 6)
    assert colon(_principal(z144, 12), _principal(z144, 24)) == unit_ideal(z144)


def test_containment(z144):
    assert _principal(z144, 12) <= _principal(z144, 4)
    assert _principal(z144, 12) < _principal(z144, 4)
    assert not _principal(z144, 4) <= _principal(z144, 12)
    assert not _principal(z144, 4) < _principal(z144, 4)


def test_ideal_from_additive_checks_closure():
    R = poly_quotient(make_zmod(2), [0, 0, 0, 1])
    # F2 * X is not closed under multiplication by X
    with pytest.raises(PreconditionViolation):
        ideal_from_additive(R, [(0, 1, 0)])
    I = ideal_from_additive(R, [(0, 1, 0), (0, 0, 1)])
    assert I == ideal_generated(R, [(0, 1, 0)])


def test_overideals_of_twelve(z144):
    over = enumerate_overideals(z144, _principal(z144, 12))
    assert len(over) == 6
    assert {J for J in over} == {_principal(z144, d) for d in (1, 2, 3, 4, 6, 12)}
    assert list(over) == sorted(over, key=lambda J: J.sort_key())


def test_all_ideals_of_z144_are_divisors(z144):
    assert len(all_ideals(z144)) == 15


def test_overideals_match_ideals_of_quotient(z144):
    I = _principal(z144, 36)
    Q, _ = quotient_by_ideal(z144, I)
    assert len(enumerate_overideals(z144, I)) == len(all_ideals(Q))


def test_sandwich_over_z36():
    R = make_zmod(36)
    I, J = _principal(R, 36), _principal(R, 6)
    between = [K for K in all_ideals(R) if I <= K <= J]
    assert {K.index for K in between} == {6, 12, 18, 36}


def test_ideals_from_other_ring_are_rejected(z144):
    other = make_zmod(144)
    with pytest.raises(RingMismatch):
        ideal_sum(_principal(z144, 2), _principal(other, 2))
    with pytest.raises(RingMismatch):
        enumerate_overideals(other, _principal(z144, 2))


def test_size_guard_on_enumeration():
    configure(max_ring_size=10)
    R = make_zmod(144)
    with pytest.raises(SizeGuardExceeded):
        enumerate_overideals(R, zero_ideal(R))


def test_prime_is_maximal_in_finite_rings(z144):
    for J in all_ideals(z144):
        assert is_prime(J) == is_maximal(J)
    assert is_prime(_principal(z144, 2))
    assert is_prime(_principal(z144, 3))
    assert not is_prime(_principal(z144, 6))


def test_primary_and_radical(z144):
    assert is_primary(_principal(z144, 16))
    assert not is_primary(_principal(z144, 12))
    assert radical(_principal(z144, 12)) == _principal(z144, 6)
    assert radical(_principal(z144, 16)) == _principal(z144, 2)


def test_idempotents_and_stable_powers(z144):
    assert is_idempotent(zero_ideal(z144))
    assert not is_idempotent(_principal(z144, 2))
    assert stable_power(_principal(z144, 2)) == _principal(z144, 16)
    assert stable_power(_principal(z144, 3)) == _principal(z144, 9)


def test_maximal_ideals(z144):
    assert set(maximal_ideals(z144)) == {_principal(z144, 2), _principal(z144, 3)}


def test_local_decomposition_of_z144(z144):
    factors = local_decomposition(z144)
    assert sorted(f.factor.size for f in factors) == [9, 16]


def test_local_decomposition_of_product(f2):
    R = direct_product(f2, make_zmod(4))
    factors = local_decomposition(R)
    assert sorted(f.factor.size for f in factors) == [2, 4]


def test_memo_tables_are_bounded_and_clearable(z144):
    assert colon(_principal(z144, 12), _principal(z144, 2)) == _principal(z144, 6)
    assert colon.cache_info().maxsize == CACHE_SIZE
    assert colon.cache_info().currsize > 0
    clear_caches()
    assert colon.cache_info().currsize == 0
    assert quotient_by_ideal.cache_info().currsize == 0
