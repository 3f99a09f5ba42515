#!/usr/bin/env python3
"""Finite commutative rings presented by an additive basis and structure constants.

A ring of rank n has basis e_1..e_n where e_i has additive order d_i, and the
product e_i * e_j is stored as a coordinate vector. Every ring the lab works
with (Z/n, finite fields, truncated polynomial rings, subrings and quotients)
is built through the constructors in this module.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
import logging
from math import gcd, lcm
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import Poly, isprime, symbols

from .errors import InvalidPresentation, NoEmbedding, RingMismatch
from .limits import CACHE_SIZE, check_size
from .normal_forms import (
    Row, cyclic_decomposition, howell_form, kernel_part, reduce_vector, span_size,
)

log = logging.getLogger(__name__)

Coefficient = Union[int, "RingElement", Sequence[int]]


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A finite commutative ring with identity.

    ``structure[i][j]`` holds the coordinates of e_i * e_j. The presentation is
    validated exhaustively on construction (commutativity, identity, order
    consistency and associativity on every basis triple).
    """

    orders: Tuple[int, ...]
    structure: Tuple[Tuple[Row, ...], ...]
    one: Row
    label: str = "R"
    gf_modulus: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        n = len(self.orders)
        if any(d < 2 for d in self.orders):
            raise InvalidPresentation(f"additive orders must be at least 2, got {self.orders}")
        if len(self.structure) != n or any(len(row) != n for row in self.structure):
            raise InvalidPresentation(f"structure table must be {n}x{n}")
        if len(self.one) != n:
            raise InvalidPresentation("identity has the wrong number of coordinates")
        reduced = []
        for row in self.structure:
            reduced_row = []
            for entry in row:
                if len(entry) != n:
                    raise InvalidPresentation("structure entry has the wrong number of coordinates")
                reduced_row.append(self._reduce(entry))
            reduced.append(tuple(reduced_row))
        object.__setattr__(self, "structure", tuple(reduced))
        object.__setattr__(self, "one", self._reduce(self.one))
        self._validate()

    # -- derived data ---------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def char(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    @cached_property
    def size(self) -> int:
        size = 1
        for d in self.orders:
            size *= d
        return size

    @cached_property
    def scales(self) -> Tuple[int, ...]:
        return tuple(self.char // d for d in self.orders)

    @cached_property
    def _sparse(self) -> Tuple[Tuple[Tuple[Tuple[int, int], ...], ...], ...]:
        return tuple(
            tuple(tuple((k, v) for k, v in enumerate(entry) if v) for entry in row)
            for row in self.structure
        )

    def _reduce(self, coords: Sequence[int]) -> Row:
        return tuple(int(x) % d for x, d in zip(coords, self.orders))

    def _validate(self) -> None:
        n = self.rank
        for i in range(n):
            for j in range(i + 1, n):
                if self.structure[i][j] != self.structure[j][i]:
                    raise InvalidPresentation(f"not commutative: e{i}*e{j} != e{j}*e{i}")
        for i in range(n):
            if self.multiply(self.one, self.basis(i)) != self.basis(i):
                raise InvalidPresentation(f"identity fails on e{i}")
        for i, d in enumerate(self.orders):
            for j in range(n):
                entry = self.structure[i][j]
                if any((d * v) % dk for v, dk in zip(entry, self.orders)):
                    raise InvalidPresentation(
                        f"order inconsistency: {d}*(e{i}*e{j}) is not zero")
        for i in range(n):
            for j in range(i, n):
                eij = self.structure[i][j]
                for k in range(n):
                    left = self.multiply(eij, self.basis(k))
                    right = self.multiply(self.basis(i), self.structure[j][k])
                    if left != right:
                        raise InvalidPresentation(
                            f"not associative on (e{i}, e{j}, e{k})")

    # -- coordinates ----------------------------------------------------

    def basis(self, i: int) -> Row:
        return tuple(int(k == i) for k in range(self.rank))

    @property
    def zero(self) -> Row:
        return (0,) * self.rank

    def embed(self, coords: Sequence[int]) -> Row:
        """Map coordinates into (Z/char)^n via coordinate i -> (char/d_i) * x_i."""
        m = self.char
        return tuple((s * x) % m for s, x in zip(self.scales, coords))

    def unembed(self, vector: Sequence[int]) -> Row:
        return tuple((v // s) % d for v, s, d in zip(vector, self.scales, self.orders))

    def coords_of(self, value: Coefficient) -> Row:
        """Coordinates of an integer, a RingElement of this ring or a raw coordinate tuple."""
        if isinstance(value, RingElement):
            if value.ring is not self:
                raise RingMismatch(f"element of {value.ring.label} used in {self.label}")
            return value.coords
        if isinstance(value, int):
            return self.scalar(value)
        if len(value) != self.rank:
            raise InvalidPresentation(f"expected {self.rank} coordinates, got {len(value)}")
        return self._reduce(value)

    def element(self, value: Coefficient) -> "RingElement":
        return RingElement(self, self.coords_of(value))

    # -- arithmetic on coordinate tuples -------------------------------

    def add(self, x: Row, y: Row) -> Row:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x: Row) -> Row:
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def scale(self, c: int, x: Row) -> Row:
        return tuple((c * a) % d for a, d in zip(x, self.orders))

    def scalar(self, c: int) -> Row:
        return self.scale(c, self.one)

    def multiply(self, x: Row, y: Row) -> Row:
        acc = [0] * self.rank
        sparse = self._sparse
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = sparse[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, v in row[j]:
                    acc[k] += c * v
        return tuple(a % d for a, d in zip(acc, self.orders))

    def power(self, x: Row, e: int) -> Row:
        result, base = self.one, x
        while e:
            if e & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            e >>= 1
        return result

    def is_unit(self, x: Row) -> bool:
        """x is a unit iff multiplication by x is onto, i.e. x*R has |R| elements."""
        if self.rank == 1:
            return gcd(x[0], self.orders[0]) == 1
        rows = howell_form([self.embed(self.multiply(x, self.basis(k))) for k in range(self.rank)],
                           self.char, self.rank)
        return span_size(rows, self.char) == self.size

    def elements(self) -> Iterator[Row]:
        check_size(self.size, f"elements of {self.label}")
        return product(*(range(d) for d in self.orders))

    def __repr__(self) -> str:
        return f"FiniteRing({self.label}, orders={self.orders})"


@dataclass(frozen=True)
class RingElement:
    ring: FiniteRing
    coords: Row

    def _other(self, other) -> Row:
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise RingMismatch(f"{self.ring.label} and {other.ring.label} differ")
            return other.coords
        if isinstance(other, int):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return RingElement(self.ring, self.ring.add(self.coords, y))

    __radd__ = __add__

    def __sub__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return RingElement(self.ring, self.ring.add(self.coords, self.ring.neg(y)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return RingElement(self.ring, self.ring.multiply(self.coords, y))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.coords))

    def __pow__(self, e: int):
        return RingElement(self.ring, self.ring.power(self.coords, e))

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.coords)

    def __repr__(self) -> str:
        return f"{self.ring.label}{list(self.coords)}"


def _same_ring(x: RingElement, y: RingElement) -> FiniteRing:
    if x.ring is not y.ring:
        raise RingMismatch(f"{x.ring.label} and {y.ring.label} differ")
    return x.ring


def add(x: RingElement, y: RingElement) -> RingElement:
    return RingElement(_same_ring(x, y), x.ring.add(x.coords, y.coords))


def mul(x: RingElement, y: RingElement) -> RingElement:
    return RingElement(_same_ring(x, y), x.ring.multiply(x.coords, y.coords))


def neg(x: RingElement) -> RingElement:
    return -x


def from_integer(ring: FiniteRing, c: int) -> RingElement:
    return RingElement(ring, ring.scalar(c))


def is_unit(x: RingElement) -> bool:
    return x.is_unit()


class RingHom:
    """A unital ring homomorphism given by the images of the source basis.

    ``section`` optionally maps target coordinates back to a preimage (or None
    when there is none); without it preimages are solved by linear algebra.
    """

    def __init__(self, source: FiniteRing, target: FiniteRing, images: Sequence[Sequence[int]],
                 section: Optional[Callable[[Row], Optional[Row]]] = None):
        if len(images) != source.rank:
            raise InvalidPresentation(f"need {source.rank} basis images, got {len(images)}")
        self.source = source
        self.target = target
        self.images = tuple(target._reduce(img) for img in images)
        self._section = section
        self._validate()

    def _validate(self) -> None:
        src, tgt = self.source, self.target
        for d, img in zip(src.orders, self.images):
            if any(tgt.scale(d, img)):
                raise InvalidPresentation("basis image order does not divide the source order")
        if self.apply(src.one) != tgt.one:
            raise InvalidPresentation("homomorphism does not preserve 1")
        for i in range(src.rank):
            for j in range(i, src.rank):
                lhs = self.apply(src.structure[i][j])
                rhs = tgt.multiply(self.images[i], self.images[j])
                if lhs != rhs:
                    raise InvalidPresentation(f"homomorphism not multiplicative on (e{i}, e{j})")

    def apply(self, x: Sequence[int]) -> Row:
        acc = [0] * self.target.rank
        for xi, img in zip(x, self.images):
            if xi:
                for k, v in enumerate(img):
                    acc[k] += xi * v
        return self.target._reduce(acc)

    def __call__(self, x: Union[RingElement, Sequence[int]]) -> RingElement:
        coords = self.source.coords_of(x)
        return RingElement(self.target, self.apply(coords))

    def preimage(self, y: Sequence[int]) -> Optional[Row]:
        """Some x with apply(x) == y, or None if y is not in the image."""
        y = self.target._reduce(y)
        if self._section is not None:
            return self._section(y)
        src, tgt = self.source, self.target
        M = lcm(src.char, tgt.char)
        lift_t = M // tgt.char
        n_t = tgt.rank
        graph = []
        for i, img in enumerate(self.images):
            right = [0] * src.rank
            right[i] = M // src.orders[i]
            graph.append([lift_t * v for v in tgt.embed(img)] + right)
        rows = howell_form(graph, M, n_t + src.rank)
        remainder, _ = reduce_vector([lift_t * v for v in tgt.embed(y)] + [0] * src.rank, rows, M)
        if any(remainder[:n_t]):
            return None
        return tuple((-z // (M // d)) % d for z, d in zip(remainder[n_t:], src.orders))

    @cached_property
    def image_size(self) -> int:
        rows = howell_form([self.target.embed(img) for img in self.images],
                           self.target.char, self.target.rank)
        return span_size(rows, self.target.char)

    def is_injective(self) -> bool:
        return self.image_size == self.source.size

    def __repr__(self) -> str:
        return f"RingHom({self.source.label} -> {self.target.label})"


# -- constructors -----------------------------------------------------------


def make_zmod(n: int) -> FiniteRing:
    if n < 2:
        raise InvalidPresentation(f"Z/n needs n >= 2, got {n}")
    return FiniteRing((n,), (((1,),),), (1,), label=f"Z/{n}")


def format_poly(coeffs: Sequence[int], var: str = "X") -> str:
    """Render low-to-high integer coefficients as e.g. ``X^2+X+1``."""
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            body = str(abs(c))
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
        if c < 0:
            terms.append("-" + body)
        else:
            terms.append("+" + body if terms else body)
    return "".join(terms) or "0"


def _poly_tables(R: FiniteRing, f: Sequence[Coefficient]):
    coeffs = [R.coords_of(c) for c in f]
    deg = len(coeffs) - 1
    if deg < 1:
        raise InvalidPresentation("polynomial modulus must have degree at least 1")
    if coeffs[-1] != R.one:
        raise InvalidPresentation("polynomial modulus must be monic")
    n = R.rank
    # X^s as a list of deg coefficient vectors, for s < 2*deg - 1
    powers: List[List[Row]] = []
    for s in range(deg):
        powers.append([R.one if t == s else R.zero for t in range(deg)])
    top = [R.neg(c) for c in coeffs[:-1]]
    for s in range(deg, 2 * deg - 1):
        prev = powers[-1]
        carry = prev[-1]
        shifted = [R.zero] + prev[:-1]
        powers.append([R.add(a, R.multiply(carry, b)) for a, b in zip(shifted, top)])

    orders = tuple(d for _ in range(deg) for d in R.orders)
    structure = []
    for j in range(deg):
        for a in range(n):
            row = []
            for l in range(deg):
                for b in range(n):
                    c = R.structure[a][b]
                    entry = []
                    for r_t in powers[j + l]:
                        entry.extend(R.multiply(c, r_t))
                    row.append(tuple(entry))
            structure.append(tuple(row))
    one = tuple(R.one) + (0,) * (n * (deg - 1))
    return orders, tuple(structure), one, coeffs


def poly_quotient(R: FiniteRing, f: Sequence[Coefficient], var: str = "X",
                  label: Optional[str] = None) -> FiniteRing:
    """R[X]/(f) for monic f given low-to-high; basis e_i X^j has index j*rank(R) + i."""
    orders, structure, one, coeffs = _poly_tables(R, f)
    if label is None:
        if R.rank == 1:
            shown = format_poly([c[0] for c in coeffs], var)
        else:
            shown = f"deg {len(coeffs) - 1}"
        label = f"{R.label}[{var}]/({shown})"
    ring = FiniteRing(orders, structure, one, label=label)
    log.debug("built %s with %d elements", label, ring.size)
    return ring


def monic_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k over F_p (low-to-high)."""
    X = symbols("X")
    for tail in product(range(p), repeat=k):
        high_to_low = (1,) + tail
        if Poly(list(high_to_low), X, modulus=p).is_irreducible:
            return tuple(reversed(high_to_low))
    raise InvalidPresentation(f"no irreducible of degree {k} over F_{p}")


@lru_cache(maxsize=None)
def make_gf(p: int, k: int = 1) -> FiniteRing:
    """The field with p^k elements in the power basis of the least irreducible modulus."""
    if not isprime(p):
        raise InvalidPresentation(f"{p} is not prime")
    if k < 1:
        raise InvalidPresentation(f"extension degree must be positive, got {k}")
    modulus = monic_irreducible(p, k)
    orders, structure, one, _ = _poly_tables(make_zmod(p), modulus)
    return FiniteRing(orders, structure, one, label=f"F{p ** k}", gf_modulus=modulus)


def direct_product(R: FiniteRing, S: FiniteRing) -> FiniteRing:
    n, k = R.rank, S.rank
    structure = []
    for i in range(n):
        structure.append(tuple(R.structure[i][j] + (0,) * k for j in range(n))
                         + tuple((0,) * (n + k) for _ in range(k)))
    for i in range(k):
        structure.append(tuple((0,) * (n + k) for _ in range(n))
                         + tuple((0,) * n + S.structure[i][j] for j in range(k)))
    return FiniteRing(R.orders + S.orders, tuple(structure), R.one + S.one,
                      label=f"{R.label}x{S.label}")


def _decomposed_ring(R: FiniteRing, spanning: Sequence[Row], decomposition,
                     to_coords: Callable[[Row], Row], label: str) -> Tuple[FiniteRing, List[Row]]:
    """Ring whose basis is given by the lifts of a cyclic decomposition."""
    basis = []
    for lift in decomposition.lifts:
        acc = R.zero
        for c, vec in zip(lift, spanning):
            if c:
                acc = R.add(acc, R.scale(c, vec))
        basis.append(acc)
    structure = tuple(
        tuple(to_coords(R.multiply(a, b)) for b in basis) for a in basis
    )
    ring = FiniteRing(decomposition.orders, structure, to_coords(R.one), label=label)
    return ring, basis


def subring_closure(R: FiniteRing, gens: Sequence[Coefficient] = (),
                    label: Optional[str] = None) -> Tuple[FiniteRing, RingHom]:
    """Smallest unital subring containing ``gens``, with its inclusion into R."""
    m, n = R.char, R.rank
    start = [R.embed(R.one)] + [R.embed(R.coords_of(g)) for g in gens]
    span = howell_form(start, m, n)
    rounds = 0
    while True:
        rounds += 1
        vectors = [R.unembed(row) for row in span]
        products = []
        for a in range(len(vectors)):
            for b in range(a, len(vectors)):
                products.append(R.embed(R.multiply(vectors[a], vectors[b])))
        closed = howell_form(list(span) + products, m, n)
        if closed == span:
            break
        span = closed
    log.debug("subring closure of %d generators stabilized after %d rounds", len(gens), rounds)

    r = len(span)
    block = [list(row) + [int(j == i) for j in range(r)] for i, row in enumerate(span)]
    relations = [list(t) for t in kernel_part(howell_form(block, m, n + r), n)]
    relations += [[m * int(j == i) for j in range(r)] for i in range(r)]
    decomposition = cyclic_decomposition(relations, r)
    spanning = [R.unembed(row) for row in span]

    def to_coords(x: Row) -> Optional[Row]:
        remainder, coeffs = reduce_vector(R.embed(x), span, m)
        if any(remainder):
            return None
        return decomposition.coordinates(coeffs)

    sub, basis = _decomposed_ring(R, spanning, decomposition, to_coords,
                                  label or f"subring of {R.label}")
    return sub, RingHom(sub, R, basis, section=to_coords)


@lru_cache(maxsize=CACHE_SIZE)
def quotient_by_ideal(R: FiniteRing, ideal) -> Tuple[FiniteRing, RingHom]:
    """R/I with a basis read off a diagonal form of I's relations; returns the projection."""
    if ideal.ring is not R:
        raise RingMismatch(f"ideal of {ideal.ring.label} used with {R.label}")
    n = R.rank
    relations = [[d * int(j == i) for j in range(n)] for i, d in enumerate(R.orders)]
    relations += [list(R.unembed(row)) for row in ideal.rows]
    decomposition = cyclic_decomposition(relations, n)
    label = f"{R.label}/I"
    if not decomposition.orders:
        Q = FiniteRing((), (), (), label=label)
        return Q, RingHom(R, Q, [()] * n, section=lambda y: R.zero)
    basis_lifts = [tuple(R._reduce(lift)) for lift in decomposition.lifts]
    Q, _ = _decomposed_ring(R, [R.basis(i) for i in range(n)], decomposition,
                            decomposition.coordinates, label)

    def lift(y: Row) -> Row:
        acc = R.zero
        for c, vec in zip(y, basis_lifts):
            if c:
                acc = R.add(acc, R.scale(c, vec))
        return acc

    images = [decomposition.coordinates(R.basis(i)) for i in range(n)]
    return Q, RingHom(R, Q, images, section=lift)


def subfield_embedding(D: FiniteRing, K: FiniteRing) -> RingHom:
    """A unital embedding of the field D into the field K (both built by make_gf)."""
    if D.gf_modulus is None or K.gf_modulus is None:
        raise InvalidPresentation("subfield_embedding needs fields built by make_gf")
    if D.char != K.char:
        raise NoEmbedding(f"characteristics differ: {D.char} vs {K.char}")
    a, b = D.rank, K.rank
    if b % a:
        raise NoEmbedding(f"F{D.size} does not embed in F{K.size}: {a} does not divide {b}")
    f = D.gf_modulus
    for alpha in K.elements():
        value = K.zero
        for c in reversed(f):
            value = K.add(K.multiply(value, alpha), K.scalar(c))
        if not any(value):
            images = [K.power(alpha, j) for j in range(a)]
            return RingHom(D, K, images)
    raise NoEmbedding(f"no root of the modulus of {D.label} in {K.label}")
