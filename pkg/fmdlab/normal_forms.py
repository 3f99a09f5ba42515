#!/usr/bin/env python3
"""Exact echelon and diagonal forms over Z and over the residue rings Z/m.

Howell forms over Z/m are computed here on plain lists of Python integers with
the unimodular 2x2 transforms built from the extended gcd. Hermite and Smith
forms over Z come from ``sympy``'s normal-form routines.
"""

from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.core.intfunc import igcdex
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

Row = Tuple[int, ...]


def _gcdex(a: int, b: int) -> Tuple[int, int, int]:
    # igcdex hands back gmpy2 integers under the gmpy ground types
    s, t, g = igcdex(a, b)
    return int(s), int(t), int(g)


def _normalizing_unit(a: int, m: int) -> int:
    """Return a unit u of Z/m with u*a = gcd(a, m) (mod m)."""
    g = gcd(a, m)
    cofactor = m // g
    if cofactor == 1:
        return 1
    u = pow((a // g) % cofactor, -1, cofactor)
    while gcd(u, m) != 1:
        u += cofactor
    return u % m


def howell_form(rows: Sequence[Sequence[int]], modulus: int, ncols: int) -> Tuple[Row, ...]:
    """Canonical Howell form of the Z/m-submodule spanned by ``rows``.

    Pivots are normalized to divisors of the modulus, entries above a pivot are
    reduced below it, and for every pivot row the annihilator multiple
    ``(m / pivot) * row`` is fed back into the remaining columns, so the rows
    with k leading zeros span exactly the submodule elements with k leading
    zeros. Two generating sets span the same submodule iff their forms match.
    """
    m = modulus
    work: List[List[int]] = []
    for row in rows:
        reduced = [x % m for x in row]
        if any(reduced):
            work.append(reduced)

    r = 0
    for c in range(ncols):
        if r >= len(work):
            break
        for i in range(r + 1, len(work)):
            b = work[i][c]
            if b == 0:
                continue
            a = work[r][c]
            if a == 0:
                work[r], work[i] = work[i], work[r]
                continue
            s, t, g = _gcdex(a, b)
            ag, bg = a // g, b // g
            top, bottom = work[r], work[i]
            work[r] = [(s * x + t * y) % m for x, y in zip(top, bottom)]
            work[i] = [(bg * x - ag * y) % m for x, y in zip(top, bottom)]
        a = work[r][c]
        if a == 0:
            continue
        u = _normalizing_unit(a, m)
        if u != 1:
            work[r] = [(u * x) % m for x in work[r]]
        pivot = work[r][c]
        for i in range(r):
            q = work[i][c] // pivot
            if q:
                work[i] = [(x - q * y) % m for x, y in zip(work[i], work[r])]
        annihilated = [((m // pivot) * x) % m for x in work[r]]
        if any(annihilated):
            work.append(annihilated)
        r += 1

    return tuple(tuple(row) for row in work if any(row))


def pivot_columns(rows: Sequence[Row]) -> Tuple[int, ...]:
    return tuple(next(j for j, x in enumerate(row) if x) for row in rows)


def reduce_vector(vector: Sequence[int], rows: Sequence[Row], modulus: int,
                  pivots: Optional[Sequence[int]] = None) -> Tuple[Row, Tuple[int, ...]]:
    """Reduce ``vector`` against Howell rows.

    Returns the remainder and the coefficients used; the vector lies in the
    span iff the remainder is zero, and then vector = sum(coeff_i * row_i).
    """
    if pivots is None:
        pivots = pivot_columns(rows)
    v = [x % modulus for x in vector]
    coefficients = []
    for row, c in zip(rows, pivots):
        q = v[c] // row[c]
        coefficients.append(q)
        if q:
            v = [(x - q * y) % modulus for x, y in zip(v, row)]
    return tuple(v), tuple(coefficients)


def span_size(rows: Sequence[Row], modulus: int) -> int:
    """Number of elements of the submodule spanned by Howell rows."""
    size = 1
    for row, c in zip(rows, pivot_columns(rows)):
        size *= modulus // row[c]
    return size


def kernel_part(rows: Sequence[Row], split: int) -> List[Row]:
    """Tails of the Howell rows whose first ``split`` entries vanish."""
    return [row[split:] for row in rows if not any(row[:split])]



def lattice_basis(vectors: Sequence[Sequence[int]], ncols: int) -> Tuple[Row, ...]:
    """Hermite basis of the Z-lattice spanned by ``vectors``.

    For a lattice of full rank, basis vector k vanishes after coordinate k and
    has a positive entry there, so ``basis[0][0]`` generates the lattice's
    intersection with the first axis.
    """
    vectors = [list(v) for v in vectors if any(v)]
    if not vectors:
        return ()
    columns = Matrix([[v[i] for v in vectors] for i in range(ncols)])
    H = hermite_normal_form(columns)
    return tuple(tuple(int(H[i, j]) for i in range(H.rows)) for j in range(H.cols))


def _identity(n: int) -> List[List[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def diagonalize(relations: Sequence[Sequence[int]], ncols: int):
    """Smith form of an integer relation matrix.

    Returns ``(diagonal, V, V_inverse)`` with V unimodular such that the row
    span of ``relations @ V`` is the span of ``diagonal[k] * e_k``. The
    diagonal runs through the invariant factors, zeros last.
    """
    nrows = len(relations)
    if nrows == 0 or ncols == 0:
        return [0] * ncols, _identity(ncols), _identity(ncols)
    M = DomainMatrix([[ZZ(int(x)) for x in row] for row in relations], (nrows, ncols), ZZ)
    smith, _, T = smith_normal_decomp(M)
    S = smith.to_Matrix()
    T = T.to_Matrix()
    T_inv = T.inv()
    diagonal = [abs(int(S[k, k])) for k in range(min(nrows, ncols))]
    diagonal.extend([0] * (ncols - len(diagonal)))
    V = [[int(T[i, j]) for j in range(ncols)] for i in range(ncols)]
    V_inv = [[int(T_inv[i, j]) for j in range(ncols)] for i in range(ncols)]
    return diagonal, V, V_inv


@dataclass(frozen=True)
class CyclicDecomposition:
    """A finite abelian group Z^n / L written as a direct sum of cyclic groups."""

    orders: Tuple[int, ...]
    coordinate_map: Tuple[Row, ...]
    lifts: Tuple[Row, ...]

    def coordinates(self, vector: Sequence[int]) -> Row:
        acc = [0] * len(self.orders)
        for x, row in zip(vector, self.coordinate_map):
            if x:
                for c, entry in enumerate(row):
                    acc[c] += x * entry
        return tuple(v % s for v, s in zip(acc, self.orders))


def cyclic_decomposition(relations: Sequence[Sequence[int]], ncols: int) -> CyclicDecomposition:
    """Decompose Z^ncols modulo the row span of ``relations`` (assumed of full rank).

    Components of order 1 are dropped; ``lifts[c]`` is an integer vector
    mapping to the c-th generator.
    """
    diagonal, V, V_inv = diagonalize(relations, ncols)
    if any(d == 0 for d in diagonal):
        raise ValueError("relation lattice is not of full rank")
    kept = [k for k, d in enumerate(diagonal) if d != 1]
    orders = tuple(diagonal[k] for k in kept)
    coordinate_map = tuple(tuple(V[i][k] % diagonal[k] for k in kept) for i in range(ncols))
    lifts = tuple(tuple(V_inv[k]) for k in kept)
    return CyclicDecomposition(orders, coordinate_map, lifts)
