import pytest

from fmdlab.constructions import (
    AmbientSpec, FAMILIES, build_ambient, build_cusp, build_dedekind_poly, build_dplusm,
    build_gf_poly, build_integers, build_quadratic, build_zx_ideal, count_nonzero_subspaces,
    cusp_shaped_ideals, dplusm_form, field_coords, gaussian_binomial, model_element, model_ideal,
    prime_power, shipped_ambients,
)
from fmdlab.errors import (
    ConfigError, ConstructionRefused, InvalidPresentation, PreconditionViolation,
)
from fmdlab.ideal_lattice import colon, ideal_generated, ideal_product, is_primary, is_prime
from fmdlab.molecularize import is_molecule
from fmdlab.ring_core import make_gf


def test_integers_model(integers12):
    assert integers12.ring.size == 144
    assert integers12.target.index == 12
    assert integers12.dedekind
    assert integers12.certified
    assert "I0 in I^2" in integers12.certificate
    assert integers12.params == {"n": 12, "depth": 2}


def test_integers_refusals():
    with pytest.raises(InvalidPresentation):
        build_integers(1)
    with pytest.raises(ConstructionRefused):
        build_integers(12, depth=1)
    assert build_integers(6, depth=3).ring.size == 216


def test_quadratic_modulus_is_least_integer_in_ideal():
    amb = build_quadratic(-5, [6])
    assert amb.params == {"d": -5, "m": 6}
    assert amb.ring.size == 36 ** 2
    assert amb.target.index == 36


@pytest.mark.parametrize("d, gens", [
    (3, [2]),
    (-4, [2]),
    (-5, [1]),
    (-5, [(2, 1), (1, 0)]),
])
def test_quadratic_rejects_bad_input(d, gens):
    with pytest.raises(InvalidPresentation):
        build_quadratic(d, gens)


def test_prime_power_and_field_coords(f4):
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(InvalidPresentation):
        prime_power(12)
    assert field_coords(f4, 2) == (0, 1)
    assert field_coords(f4, 3) == (1, 1)
    with pytest.raises(InvalidPresentation):
        field_coords(f4, 4)


def test_gf_poly_models():
    amb = build_gf_poly(2, [1, 1, 1])
    assert amb.ring.size == 16
    assert amb.target.index == 4
    assert is_prime(amb.target)
    square = build_gf_poly(2, [0, 0, 1])
    assert not is_prime(square.target)
    with pytest.raises(InvalidPresentation):
        build_gf_poly(2, [1, 1, 0])


def test_cusp_model():
    amb = build_cusp(2)
    assert amb.ring.size == 512
    assert len(amb.lattice) == 7
    assert amb.overring is not None


def test_cusp_shaped_ideals_are_distinct():
    amb = build_cusp(2)
    shaped = cusp_shaped_ideals(amb)
    assert [b for b, _ in shaped] == [0, 1]
    ideals = [J for _, J in shaped]
    assert ideals[0] != ideals[1]
    assert all(J in amb.lattice for J in ideals)
    line = model_ideal(amb, [0, 0, 0, 1], [0, 0, 0, 0, 1])
    assert line not in ideals


def test_cusp_rejects_bad_truncation():
    with pytest.raises(InvalidPresentation):
        build_cusp(2, N=4)
    with pytest.raises(InvalidPresentation):
        build_cusp(2, exponents=(1,))
    with pytest.raises(InvalidPresentation):
        build_cusp(6)


@pytest.mark.slow
@pytest.mark.parametrize("q", [3, 4])
def test_cusp_lattice_grows_with_field(q):
    amb = build_cusp(q)
    assert len(amb.lattice) == q + 5
    assert len({J.rows for _, J in cusp_shaped_ideals(amb)}) == q


def test_model_element_outside_subring_is_rejected():
    amb = build_cusp(2)
    with pytest.raises(PreconditionViolation):
        model_element(amb, [0, 1])


def test_zx_ideal_model():
    amb = build_zx_ideal(2)
    assert amb.ring.size == 4096
    P = amb.target
    M = model_ideal(amb, [2], [0, 1])
    assert is_molecule(amb, P)
    assert is_primary(P)
    assert not is_prime(P)
    assert colon(P, M) == ideal_product(M, M)
    with pytest.raises(InvalidPresentation):
        build_zx_ideal(4)


@pytest.mark.slow
def test_zx_ideal_model_odd_prime():
    amb = build_zx_ideal(3)
    assert is_molecule(amb, amb.target)
    assert not is_prime(amb.target)


def test_dedekind_poly_models():
    amb = build_dedekind_poly(2, [0, 1], n=2)
    assert is_molecule(amb, amb.target)
    with pytest.raises(ConstructionRefused):
        build_dedekind_poly(2, [0, 1, 1])
    compound = build_dedekind_poly(2, [0, 1, 1], require_irreducible=False)
    assert not is_molecule(compound, compound.target)
    with pytest.raises(InvalidPresentation):
        build_dedekind_poly(2, [1, 2])


def test_dplusm_model():
    amb = build_dplusm(2, 1, 2)
    assert amb.ring.size == 2048
    assert amb.params["level"] == 3
    assert len(amb.lattice) == 10
    levels = {}
    for J in amb.lattice:
        form = dplusm_form(amb, J)
        assert form is not None
        levels[form.level] = levels.get(form.level, 0) + 1
    assert levels == {0: 1, 1: 4, 2: 4, 3: 1}


def test_dplusm_form_of_target():
    amb = build_dplusm(2, 1, 2)
    form = dplusm_form(amb, amb.target)
    assert (form.level, form.dimension) == (3, 2)


@pytest.mark.parametrize("args", [(4, 1, 2), (2, 2, 3), (2, 2, 2), (2, 0, 2)])
def test_dplusm_rejects_bad_fields(args):
    with pytest.raises(InvalidPresentation):
        build_dplusm(*args)


def test_dplusm_refusals():
    with pytest.raises(InvalidPresentation):
        build_dplusm(2, 1, 2, N=3)
    with pytest.raises(ConstructionRefused):
        build_dplusm(2, 1, 2, N=6, level=4)


def test_subspace_counts():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 2, 2) == 7
    assert gaussian_binomial(2, 3, 2) == 0
    assert count_nonzero_subspaces(2, 2) == 4
    assert count_nonzero_subspaces(2, 3) == 15
    assert count_nonzero_subspaces(4, 1) == 1


def test_build_ambient_dispatch():
    amb = build_ambient(AmbientSpec("integers", {"n": 6}))
    assert amb.ring.size == 36
    with pytest.raises(ConfigError):
        build_ambient(AmbientSpec("nope"))
    with pytest.raises(ConfigError):
        build_ambient(AmbientSpec("integers", {"m": 6}))


def test_shipped_ambients_use_known_families():
    names = [name for name, _ in shipped_ambients()]
    assert len(names) == len(set(names))
    assert {name.split()[0] for name in names} <= set(FAMILIES)


def test_model_ideal_in_integers(integers12):
    assert model_ideal(integers12, [2]) == ideal_generated(integers12.ring, [2])
    assert model_element(integers12, [5]) == (5,)


def test_gf_model_element_uses_field_digits():
    amb = build_gf_poly(4, [2, 1])
    F = make_gf(2, 2)
    assert amb.params["field_q"] == 4
    x = model_element(amb, [2, 1])
    assert amb.target == ideal_generated(amb.ring, [x])
    assert x[:F.rank] == (0, 1)
