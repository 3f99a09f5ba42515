#!/usr/bin/env python3
"""Certified finite models of the domains under study.

Each builder returns an Ambient: a finite ring A = R/I0 and the image of an
ideal I, after checking I0 in I^2 by explicit membership tests in a strictly
deeper model. A builder that cannot certify raises ConstructionRefused.
"""

from dataclasses import dataclass, field
import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from sympy import Poly, factorint, isprime, symbols

from .errors import ConfigError, ConstructionRefused, InvalidPresentation, PreconditionViolation
from .ideal_lattice import Ideal, ideal_generated, ideal_product
from .molecularize import Ambient
from .normal_forms import Row, howell_form, lattice_basis, span_size
from .ring_core import (
    FiniteRing, format_poly, make_gf, make_zmod, poly_quotient, quotient_by_ideal,
    subfield_embedding, subring_closure,
)

log = logging.getLogger(__name__)

IntPoly = Sequence[int]


@dataclass(frozen=True)
class AmbientSpec:
    family: str
    params: Dict[str, object] = field(default_factory=dict)


# -- polynomial helpers -----------------------------------------------------


def _int_poly_mul(a: IntPoly, b: IntPoly) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_poly_power(f: IntPoly, e: int) -> List[int]:
    out = [1]
    for _ in range(e):
        out = _int_poly_mul(out, f)
    return out


def _ring_poly_mul(R: FiniteRing, a: Sequence[Row], b: Sequence[Row]) -> List[Row]:
    out = [R.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = R.add(out[i + j], R.multiply(x, y))
    return out


def prime_power(q: int) -> Tuple[int, int]:
    factors = factorint(q)
    if q < 2 or len(factors) != 1:
        raise InvalidPresentation(f"{q} is not a prime power")
    (p, k), = factors.items()
    return int(p), int(k)


def field_coords(F: FiniteRing, c: int) -> Row:
    """Coordinates of the field element whose base-p digits are those of c."""
    p = F.char
    if not 0 <= c < F.size:
        raise InvalidPresentation(f"{c} does not name an element of {F.label}")
    digits = []
    for _ in range(F.rank):
        c, r = divmod(c, p)
        digits.append(r)
    return tuple(digits)


def _block(ring: FiniteRing, width: int, degree: int, coeff: Row) -> Row:
    """Coordinates of coeff * X^degree in base[X]/(g), the base having rank ``width``."""
    k = width
    coords = [0] * ring.rank
    coords[degree * k:(degree + 1) * k] = coeff
    return tuple(coords)


def _stack(ring: FiniteRing, coeffs: Sequence[Row]) -> Row:
    flat = [x for c in coeffs for x in c]
    if len(flat) > ring.rank:
        raise InvalidPresentation("polynomial degree exceeds the model's truncation")
    return tuple(flat + [0] * (ring.rank - len(flat)))


def _is_irreducible_mod(f: IntPoly, p: int) -> bool:
    X = symbols("X")
    return Poly(list(reversed(f)), X, modulus=p).is_irreducible


def _certify(deep: FiniteRing, target_gens: Sequence[Row], relations: Sequence[Row], what: str) -> str:
    """Check every relation of I0 lies in I^2, with I^2 computed in ``deep``."""
    I = ideal_generated(deep, target_gens)
    square = ideal_product(I, I)
    for rel in relations:
        if not square.contains(rel):
            log.warning("refusing %s: a generator of I0 is not in I^2", what)
            raise ConstructionRefused(f"{what}: cannot certify I0 in I^2")
    log.debug("certified %s in a model of %d elements", what, deep.size)
    return f"I0 in I^2 checked in {deep.label}"


# -- builders ---------------------------------------------------------------


def build_integers(n: int, depth: int = 2) -> Ambient:
    """R = Z, I = (n), A = Z/(n^depth)."""
    if n < 2:
        raise InvalidPresentation(f"n must be at least 2, got {n}")
    if depth < 2:
        raise ConstructionRefused(f"(n^{depth}) is not inside (n)^2")
    A = make_zmod(n ** depth)
    certificate = _certify(make_zmod(n ** (depth + 1)), [(n,)], [(n ** depth,)], f"Z, I=({n})")
    return Ambient("Z", A, ideal_generated(A, [n]), model=f"Z/({n}^{depth})",
                   certificate=certificate, dedekind=True, params={"n": n, "depth": depth})


def _gaussian_pairs(gens: Sequence[Union[int, Sequence[int]]]) -> List[Tuple[int, int]]:
    pairs = []
    for g in gens:
        if isinstance(g, int):
            pairs.append((g, 0))
        else:
            a, b = g
            pairs.append((int(a), int(b)))
    return pairs


def build_quadratic(d: int, gens: Sequence[Union[int, Sequence[int]]]) -> Ambient:
    """R = Z[sqrt d] for squarefree d < 0, I generated by a + b*sqrt(d) pairs; A = R/(m^2).

    m is the least positive integer in I.
    """
    if d >= 0:
        raise InvalidPresentation("only imaginary quadratic orders are supported")
    if any(e > 1 for e in factorint(-d).values()):
        raise InvalidPresentation(f"{d} is not squarefree")
    pairs = _gaussian_pairs(gens)
    # Z-lattice of I in coordinates (integer part, sqrt-part)
    lattice = []
    for a, b in pairs:
        lattice.append((a, b))
        lattice.append((b * d, a))
    basis = lattice_basis(lattice, 2)
    if len(basis) < 2:
        raise InvalidPresentation("the ideal must be nonzero")
    m = basis[0][0]
    if m == 1:
        raise InvalidPresentation("the ideal is the whole ring")
    modulus = [-d, 0, 1]
    shown = format_poly(modulus)

    def model(c: int) -> FiniteRing:
        return poly_quotient(make_zmod(c), modulus, label=f"Z[X]/({shown}, {c})")

    A = model(m * m)
    certificate = _certify(model(m ** 3), pairs, [(m * m, 0)], f"Z[sqrt({d})], m={m}")
    return Ambient(f"Z[sqrt({d})]", A, ideal_generated(A, pairs),
                   model=f"Z[X]/({shown}, {m * m})", certificate=certificate,
                   dedekind=d % 4 in (2, 3), params={"d": d, "m": m})


def build_gf_poly(q: int, f: IntPoly) -> Ambient:
    """R = F_q[X], I = (f), A = R/(f^2); coefficients of f are field elements as base-p integers."""
    p, k = prime_power(q)
    F = make_gf(p, k)
    coeffs = [field_coords(F, c) for c in f]
    if len(coeffs) < 2 or coeffs[-1] != F.one:
        raise InvalidPresentation("f must be monic of positive degree")
    square = _ring_poly_mul(F, coeffs, coeffs)
    cube = _ring_poly_mul(F, square, coeffs)
    A = poly_quotient(F, square, label=f"F{q}[X]/(f^2)")
    deep = poly_quotient(F, cube, label=f"F{q}[X]/(f^3)")
    certificate = _certify(deep, [_stack(deep, coeffs)], [_stack(deep, square)],
                           f"F{q}[X], f={format_poly(list(f))}")
    return Ambient(f"F{q}[X]", A, ideal_generated(A, [_stack(A, coeffs)]),
                   model=f"F{q}[X]/(({format_poly(list(f))})^2)", certificate=certificate,
                   dedekind=True, params={"q": q, "f": list(f), "field_q": q})


def _cusp_model(q: int, N: int):
    p, k = prime_power(q)
    F = make_gf(p, k)
    V = poly_quotient(F, [F.zero] * N + [F.one], label=f"F{q}[X]/(X^{N})")
    gens = [_block(V, F.rank, 0, F.basis(i)) for i in range(k)]
    gens += [_block(V, F.rank, 2, F.one), _block(V, F.rank, 3, F.one)]
    R, inclusion = subring_closure(V, gens, label=f"F{q}[X^2,X^3]")
    return F, V, R, inclusion


def _monomial_in(inclusion, F: FiniteRing, degree: int, coeff: Optional[Row] = None) -> Row:
    V = inclusion.target
    x = inclusion.preimage(_block(V, F.rank, degree, coeff or F.one))
    if x is None:
        raise InvalidPresentation(f"X^{degree} is not in the subring")
    return x


def build_cusp(q: int, N: int = 10, exponents: Sequence[int] = (4,)) -> Ambient:
    """R = F_q[X^2, X^3] inside F_q[X]/(X^N), I generated by X^e for e in ``exponents``."""
    if not exponents or min(exponents) < 2:
        raise InvalidPresentation("target monomials must have exponent at least 2")
    if N <= max(exponents):
        raise InvalidPresentation("truncation must exceed every target exponent")
    F, V, R, inclusion = _cusp_model(q, N)
    F_deep, _, R_deep, inclusion_deep = _cusp_model(q, N + 2)
    certificate = _certify(
        R_deep,
        [_monomial_in(inclusion_deep, F_deep, e) for e in exponents],
        [_monomial_in(inclusion_deep, F_deep, N), _monomial_in(inclusion_deep, F_deep, N + 1)],
        f"F{q}[X^2,X^3], N={N}",
    )
    target = ideal_generated(R, [_monomial_in(inclusion, F, e) for e in exponents])
    shown = ", ".join(f"X^{e}" for e in exponents)
    return Ambient(f"F{q}[X^2,X^3]", R, target,
                   model=f"F{q}[X^2,X^3] in F{q}[X]/(X^{N}), I=({shown})",
                   certificate=certificate, overring=inclusion,
                   params={"q": q, "N": N, "exponents": list(exponents), "field_q": q})


def build_zx_ideal(p: int, n: int = 2) -> Ambient:
    """R = Z[X], I = (X^n, p^2), A = Z[X]/(X^2n, p^2 X^n, p^4)."""
    if not isprime(p):
        raise InvalidPresentation(f"{p} is not prime")
    if n < 1:
        raise InvalidPresentation("exponent must be positive")
    B = poly_quotient(make_zmod(p ** 4), [0] * (2 * n) + [1])
    x_n = _block(B, 1, n, (1,))
    A, projection = quotient_by_ideal(B, ideal_generated(B, [B.scale(p * p, x_n)]))

    deep = poly_quotient(make_zmod(p ** 5), [0] * (2 * n + 1) + [1])
    deep_x = lambda e: _block(deep, 1, e, (1,))
    certificate = _certify(
        deep,
        [deep_x(n), deep.scalar(p * p)],
        [deep_x(2 * n), deep.scale(p * p, deep_x(n)), deep.scalar(p ** 4)],
        f"Z[X], I=(X^{n}, {p * p})",
    )
    target = ideal_generated(A, [projection.apply(x_n), projection.apply(B.scalar(p * p))])
    return Ambient("Z[X]", A, target, model=f"Z[X]/(X^{2 * n}, {p * p}X^{n}, {p ** 4})",
                   certificate=certificate, cover=projection, params={"p": p, "n": n})


def build_dedekind_poly(p: int, f: IntPoly, n: int = 1, require_irreducible: bool = True) -> Ambient:
    """R = Z[X], I = (p, f^n), A = ((Z/p^2)[X]/(f^2n)) / (p f^n)."""
    if not isprime(p):
        raise InvalidPresentation(f"{p} is not prime")
    f = [int(c) for c in f]
    if len(f) < 2 or f[-1] != 1:
        raise InvalidPresentation("f must be monic of positive degree")
    if n < 1:
        raise InvalidPresentation("exponent must be positive")
    shown = format_poly(f)
    if not _is_irreducible_mod(f, p):
        if require_irreducible:
            raise ConstructionRefused(f"{shown} is not irreducible modulo {p}")
        log.info("%s is reducible modulo %d; building the model anyway", shown, p)
    f_n = _int_poly_power(f, n)
    f_2n = _int_poly_power(f, 2 * n)

    def pad(ring: FiniteRing, coeffs: IntPoly) -> Row:
        return ring.coords_of(list(coeffs) + [0] * (ring.rank - len(coeffs)))

    B = poly_quotient(make_zmod(p * p), f_2n, label=f"(Z/{p * p})[X]/(({shown})^{2 * n})")
    A, projection = quotient_by_ideal(B, ideal_generated(B, [B.scale(p, pad(B, f_n))]))

    deep = poly_quotient(make_zmod(p ** 3), _int_poly_power(f, 2 * n + 1))
    certificate = _certify(
        deep,
        [deep.scalar(p), pad(deep, f_n)],
        [deep.scalar(p * p), deep.scale(p, pad(deep, f_n)), pad(deep, f_2n)],
        f"Z[X], I=({p}, ({shown})^{n})",
    )
    target = ideal_generated(A, [projection.apply(B.scalar(p)), projection.apply(pad(B, f_n))])
    return Ambient("Z[X]", A, target,
                   model=f"Z[X]/({p * p}, {p}({shown})^{n}, ({shown})^{2 * n})",
                   certificate=certificate, cover=projection,
                   params={"p": p, "f": f, "n": n})


def _dplusm_model(p: int, k_D: int, k_K: int, N: int):
    K, D = make_gf(p, k_K), make_gf(p, k_D)
    embedding = subfield_embedding(D, K)
    V = poly_quotient(K, [K.zero] * N + [K.one], var="t", label=f"F{K.size}[t]/(t^{N})")
    gens = [_block(V, K.rank, 0, embedding.apply(D.basis(i))) for i in range(D.rank)]
    gens += [_block(V, K.rank, 1, K.basis(i)) for i in range(K.rank)]
    R, inclusion = subring_closure(V, gens, label=f"D+M({p};{k_D},{k_K};N={N})")
    return K, V, R, inclusion


def build_dplusm(p: int, k_D: int, k_K: int, N: int = 6, level: Optional[int] = None) -> Ambient:
    """R = D + tV with V = K[t]/(t^N), K = GF(p^k_K), D = GF(p^k_D); I = t^level V."""
    if not isprime(p):
        raise InvalidPresentation(f"{p} is not prime")
    if k_D < 1 or k_K % k_D or k_D >= k_K:
        raise InvalidPresentation("D must be a proper subfield of K (k_D | k_K, k_D < k_K)")
    if N < 4:
        raise InvalidPresentation("truncation must be at least 4")
    level = N // 2 if level is None else level
    if level < 1 or 2 * level > N:
        raise ConstructionRefused(f"t^{N}V is not inside (t^{level}V)^2")
    K, V, R, inclusion = _dplusm_model(p, k_D, k_K, N)
    K_deep, _, R_deep, inclusion_deep = _dplusm_model(p, k_D, k_K, N + 2)

    def level_gens(incl, Kf, deg):
        return [incl.preimage(_block(incl.target, Kf.rank, deg, Kf.basis(i))) for i in range(Kf.rank)]

    label = f"D+M({p};{k_D},{k_K};N={N})"
    certificate = _certify(R_deep, level_gens(inclusion_deep, K_deep, level),
                           level_gens(inclusion_deep, K_deep, N), label)
    target = ideal_generated(R, level_gens(inclusion, K, level))
    return Ambient(label, R, target,
                   model=f"F{p ** k_D} + tF{p ** k_K}[t] in F{p ** k_K}[t]/(t^{N}), I=t^{level}V",
                   certificate=certificate, overring=inclusion,
                   params={"p": p, "k_D": k_D, "k_K": k_K, "N": N, "level": level,
                           "field_q": p ** k_K})


# -- model helpers ----------------------------------------------------------


def model_element(amb: Ambient, coeffs: Sequence[int]) -> Row:
    """Coordinates in the model of the polynomial with low-to-high coefficients ``coeffs``.

    Coefficients are integers, or field elements as base-p integers when the
    ambient is built over a finite field.
    """
    field_q = amb.params.get("field_q") or 0
    if field_q:
        p, k = prime_power(field_q)
        base = make_gf(p, k)
        blocks = [field_coords(base, c) for c in coeffs]
    else:
        blocks = [(int(c),) for c in coeffs]
    if amb.overring is not None:
        V = amb.overring.target
        x = amb.overring.preimage(_stack(V, blocks))
        if x is None:
            raise PreconditionViolation("element is not in the subring")
        return x
    if amb.cover is not None:
        B = amb.cover.source
        return amb.cover.apply(B.coords_of(_stack(B, blocks)))
    return amb.ring.coords_of(_stack(amb.ring, blocks))


def model_ideal(amb: Ambient, *polys: Sequence[int]) -> Ideal:
    return ideal_generated(amb.ring, [model_element(amb, f) for f in polys])


def cusp_shaped_ideals(amb: Ambient) -> List[Tuple[int, Ideal]]:
    """The ideals (X^2 + bX^3, X^4) of a cusp model, one per field element b."""
    q = amb.params["q"]
    out = []
    for b in range(q):
        out.append((b, model_ideal(amb, [0, 0, 1, b], [0, 0, 0, 0, 1])))
    return out


@dataclass(frozen=True)
class DPlusMForm:
    """An ideal written as t^level F + t^(level+1) V with F a D-subspace of K."""

    level: int
    subspace: Tuple[Row, ...]
    dimension: int


def dplusm_form(amb: Ambient, J: Ideal) -> Optional[DPlusMForm]:
    """Classify an ideal of a D+M model, or None when it is not of the form t^n F + t^(n+1) V."""
    p, k_D, k_K, N = (amb.params[key] for key in ("p", "k_D", "k_K", "N"))
    K = make_gf(p, k_K)
    inclusion = amb.overring
    V = inclusion.target
    vectors = [inclusion.apply(g) for g in J.additive_generators]
    levels = [j for j in range(N) if any(any(v[j * k_K:(j + 1) * k_K]) for v in vectors)]
    if not levels:
        return None
    n = levels[0]
    subspace = howell_form([v[n * k_K:(n + 1) * k_K] for v in vectors], p, k_K)
    for j in range(n + 1, N):
        for i in range(k_K):
            x = inclusion.preimage(_block(V, K.rank, j, K.basis(i)))
            if x is None or not J.contains(x):
                return None
    size = span_size(subspace, p)
    dimension = 0
    while size > 1:
        size //= p ** k_D
        dimension += 1
    return DPlusMForm(n, subspace, dimension)


def gaussian_binomial(r: int, s: int, q: int) -> int:
    """Number of s-dimensional subspaces of an r-dimensional space over F_q."""
    if s < 0 or s > r:
        return 0
    num, den = 1, 1
    for i in range(s):
        num *= q ** (r - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_nonzero_subspaces(q: int, r: int) -> int:
    return sum(gaussian_binomial(r, s, q) for s in range(1, r + 1))


# -- registry ---------------------------------------------------------------


FAMILIES: Dict[str, Callable[..., Ambient]] = {
    "integers": build_integers,
    "quadratic": build_quadratic,
    "gf-poly": build_gf_poly,
    "cusp": build_cusp,
    "zx-ideal": build_zx_ideal,
    "dedekind-poly": build_dedekind_poly,
    "dplusm": build_dplusm,
}


def build_ambient(spec: AmbientSpec) -> Ambient:
    builder = FAMILIES.get(spec.family)
    if builder is None:
        raise ConfigError(f"unknown ambient family {spec.family!r}; "
                          f"choose from {', '.join(sorted(FAMILIES))}")
    try:
        return builder(**spec.params)
    except TypeError as e:
        raise ConfigError(f"bad parameters for {spec.family}: {e}") from e


def shipped_ambients() -> List[Tuple[str, Callable[[], Ambient]]]:
    """Default models swept by the property suite, smallest first."""
    return [
        ("integers n=2", lambda: build_integers(2)),
        ("integers n=12", lambda: build_integers(12)),
        ("integers n=30", lambda: build_integers(30)),
        ("gf-poly q=2 f=X^2+X+1", lambda: build_gf_poly(2, [1, 1, 1])),
        ("gf-poly q=2 f=X^2", lambda: build_gf_poly(2, [0, 0, 1])),
        ("dedekind-poly p=2 f=X n=1", lambda: build_dedekind_poly(2, [0, 1], 1)),
        ("dedekind-poly p=2 f=X n=2", lambda: build_dedekind_poly(2, [0, 1], 2)),
        ("quadratic d=-5 I=(2,1+X)", lambda: build_quadratic(-5, [2, (1, 1)])),
        ("cusp q=2", lambda: build_cusp(2)),
        ("quadratic d=-1 I=(5)", lambda: build_quadratic(-1, [5])),
        ("quadratic d=-5 I=(6)", lambda: build_quadratic(-5, [6])),
        ("dplusm p=2 1,2 N=6", lambda: build_dplusm(2, 1, 2)),
        ("zx-ideal p=2", lambda: build_zx_ideal(2)),
    ]
