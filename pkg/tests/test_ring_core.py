import pytest

from fmdlab.errors import InvalidPresentation, NoEmbedding, RingMismatch
from fmdlab.ideal_lattice import ideal_generated, zero_ideal
from fmdlab.ring_core import (
    FiniteRing, RingHom, add, direct_product, format_poly, from_integer, is_unit, make_gf,
    make_zmod, monic_irreducible, mul, neg, poly_quotient, quotient_by_ideal, subfield_embedding,
    subring_closure,
)


def _x_power(ring, width, degree):
    coords = [0] * ring.rank
    coords[degree * width] = 1
    return tuple(coords)


def test_make_zmod():
    R = make_zmod(6)
    assert R.size == 6
    assert R.char == 6
    assert R.rank == 1
    assert R.multiply(R.one, R.one) == R.one


def test_make_zmod_rejects_degenerate_modulus():
    with pytest.raises(InvalidPresentation):
        make_zmod(1)


def test_zmod_arithmetic():
    R = make_zmod(6)
    x, y = R.element(4), R.element(5)
    assert (x + y).coords == (3,)
    assert (x * y).coords == (2,)
    assert add(x, y) == x + y
    assert mul(x, y) == x * y
    assert neg(x).coords == (2,)
    assert (x - y).coords == (5,)


def test_units_of_z144(z144):
    assert not from_integer(z144, 12).is_unit()
    assert is_unit(from_integer(z144, 7))
    assert z144.element(1).is_unit()


def test_mixed_rings_are_rejected():
    x, y = make_zmod(6).element(1), make_zmod(6).element(1)
    with pytest.raises(RingMismatch):
        x + y
    with pytest.raises(RingMismatch):
        mul(x, y)


def test_gf_sizes_and_modulus(f2, f4):
    assert f2.size == 2
    assert f4.size == 4
    assert f4.gf_modulus == (1, 1, 1)
    assert monic_irreducible(2, 3) == (1, 1, 0, 1)


def test_gf9_is_a_field():
    F9 = make_gf(3, 2)
    assert F9.size == 9
    assert all(F9.is_unit(x) for x in F9.elements() if any(x))


def test_gf_rejects_composite():
    with pytest.raises(InvalidPresentation):
        make_gf(4, 1)


def test_subfield_embedding_prime_field(f2, f4):
    emb = subfield_embedding(f2, f4)
    assert emb.apply((0,)) == f4.zero
    assert emb.apply((1,)) == f4.one


def test_subfield_embedding_image_is_subfield(f4):
    F16 = make_gf(2, 4)
    emb = subfield_embedding(f4, F16)
    assert emb.is_injective()
    image = {emb.apply(x) for x in f4.elements()}
    assert len(image) == 4
    assert all(F16.multiply(a, b) in image for a in image for b in image)


def test_subfield_embedding_needs_divisibility(f4):
    with pytest.raises(NoEmbedding):
        subfield_embedding(f4, make_gf(2, 3))
    with pytest.raises(NoEmbedding):
        subfield_embedding(make_gf(3, 1), f4)


def test_truncated_polynomial_ring(f2):
    R = poly_quotient(f2, [0, 0, 0, 0, 1])
    assert R.size == 16
    x = _x_power(R, 1, 1)
    assert R.power(x, 3) == _x_power(R, 1, 3)
    assert not any(R.power(x, 4))


def test_poly_quotient_over_z16():
    R = poly_quotient(make_zmod(16), [0, 0, 0, 0, 1])
    assert R.size == 16 ** 4
    assert R.char == 16


def test_poly_quotient_field(f2):
    F = poly_quotient(f2, [1, 1, 1])
    assert all(F.is_unit(x) for x in F.elements() if any(x))


def test_poly_quotient_rejects_non_monic():
    with pytest.raises(InvalidPresentation):
        poly_quotient(make_zmod(4), [1, 0, 2])


def test_format_poly():
    assert format_poly([1, 1, 1]) == "X^2+X+1"
    assert format_poly([5, 0, 1]) == "X^2+5"
    assert format_poly([0, -1, 2], "t") == "2t^2-t"
    assert format_poly([0]) == "0"


def test_subring_closure_of_cusp(f2):
    V = poly_quotient(f2, [0] * 4 + [1])
    sub, inclusion = subring_closure(V, [_x_power(V, 1, 2), _x_power(V, 1, 3)])
    assert sub.size == 8
    assert inclusion.is_injective()
    assert inclusion.preimage(_x_power(V, 1, 1)) is None
    assert inclusion.apply(inclusion.preimage(_x_power(V, 1, 3))) == _x_power(V, 1, 3)


def test_subring_closure_without_generators_is_prime_subring(f4):
    V = poly_quotient(f4, [f4.zero, f4.zero, f4.one])
    sub, _ = subring_closure(V)
    assert sub.size == 2


def test_subring_closure_is_idempotent(f2):
    V = poly_quotient(f2, [0] * 6 + [1])
    sub, _ = subring_closure(V, [_x_power(V, 1, 2), _x_power(V, 1, 3)])
    again, _ = subring_closure(sub, [sub.basis(i) for i in range(sub.rank)])
    assert again.size == sub.size


def test_subring_closure_dplusm_size(f4):
    V = poly_quotient(f4, [f4.zero] * 6 + [f4.one], var="t")
    gens = []
    for i in range(f4.rank):
        coords = [0] * V.rank
        coords[f4.rank + i] = 1
        gens.append(tuple(coords))
    sub, _ = subring_closure(V, gens)
    assert sub.size == 2 * 4 ** 5


def test_quotient_of_z144(z144):
    Q, projection = quotient_by_ideal(z144, ideal_generated(z144, [12]))
    assert Q.size == 12
    assert projection.apply((25,)) == projection.apply((1,))
    assert projection.apply(projection.preimage((5,))) == (5,)


def test_quotient_by_zero_ideal_keeps_size(z144):
    Q, projection = quotient_by_ideal(z144, zero_ideal(z144))
    assert Q.size == z144.size
    assert projection.is_injective()


def test_quotient_by_unit_ideal_is_zero_ring(z144):
    Q, _ = quotient_by_ideal(z144, ideal_generated(z144, [1]))
    assert Q.size == 1
    assert Q.rank == 0


def test_quotient_with_mixed_orders():
    R = poly_quotient(make_zmod(16), [0, 0, 0, 0, 1])
    I = ideal_generated(R, [(0, 0, 4, 0), (0, 0, 0, 4)])
    Q, _ = quotient_by_ideal(R, I)
    assert Q.size == 4096
    assert I.size * Q.size == R.size


def test_presentation_validation():
    with pytest.raises(InvalidPresentation):
        FiniteRing((2,), (((1,),),), (0,))
    with pytest.raises(InvalidPresentation):
        FiniteRing((1,), (((0,),),), (0,))
    # e0*e1 != e1*e0
    structure = (((1, 0), (0, 1)), ((1, 0), (0, 1)))
    with pytest.raises(InvalidPresentation):
        FiniteRing((2, 2), structure, (1, 0))


def test_ring_hom_validation():
    RingHom(make_zmod(4), make_zmod(2), [(1,)])
    with pytest.raises(InvalidPresentation):
        RingHom(make_zmod(2), make_zmod(4), [(1,)])


def test_hom_preimage_without_section():
    hom = RingHom(make_zmod(12), make_zmod(4), [(1,)])
    x = hom.preimage((3,))
    assert hom.apply(x) == (3,)
    assert hom.image_size == 4
    assert not hom.is_injective()


def test_direct_product(f2):
    R = direct_product(f2, f2)
    assert R.size == 4
    assert R.one == (1, 1)
    assert not R.is_unit((1, 0))
    assert R.multiply((1, 0), (0, 1)) == (0, 0)
