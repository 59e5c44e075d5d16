"""Exact integer linear algebra.

Vectors are tuples of Python ints, matrices are lists of such tuples (rows).
Nothing in here rounds: rational work goes through ``fractions.Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from operator import mul
from typing import Sequence, Tuple

from .errors import DomainError

IntVector = Tuple[int, ...]
IntMatrix = list  # list of IntVector rows

INFINITE = "infinite"


def primitive(v: Sequence[int]) -> tuple[IntVector, int]:
    """Split ``v`` into its primitive direction and integral length.

    >>> primitive((4, 6))
    ((2, 3), 2)
    """
    v = tuple(int(x) for x in v)
    g = math.gcd(*v) if v else 0
    if g == 0:
        raise DomainError("primitive vector of the zero vector is undefined")
    return tuple(x // g for x in v), g


def primitive_or_zero(v: Sequence) -> IntVector:
    """Primitive integer vector along a rational ``v``; zero stays zero."""
    v = clear_denominators(v)
    g = math.gcd(*v) if v else 0
    if g == 0:
        return v
    return tuple(x // g for x in v)


def clear_denominators(v: Sequence) -> IntVector:
    """Positive rescaling of a rational vector to an integer one."""
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = den * x.denominator // math.gcd(den, x.denominator)
    return tuple(int(x * den) for x in v)


def dot(u: Sequence, v: Sequence):
    return sum(map(mul, u, v))


def normalize_number(x):
    """Return an int when a Fraction is integral, for stable printing."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


# --------------------------------------------------------------------------
# rational elimination


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped.
    """
    mat = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        mat[r] = [x / p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    mat = [list(clear_denominators(r)) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        for i in range(r + 1, len(mat)):
            f = mat[i][c]
            mat[i] = [(p * a - f * b) // prev for a, b in zip(mat[i], mat[r])]
        prev = p
        r += 1
        if r == len(mat):
            break
    return r


def solve_affine(rows: Sequence[Sequence], rhs: Sequence):
    """Solve ``rows @ x = rhs`` over Q.

    Returns ``None`` if inconsistent, else ``(particular, free_dimension)``.
    """
    if not rows:
        return None if any(rhs) else ((), None)
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    return tuple(x), ncols - len(pivots)


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant by Bareiss elimination."""
    mat = [list(r) for r in rows]
    n = len(mat)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if mat[i][k] != 0), None)
            if swap is None:
                return 0
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
        prev = mat[k][k]
    return sign * mat[n - 1][n - 1]


# --------------------------------------------------------------------------
# normal forms


def hermite_normal_form(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``.  Pivots are
    positive, entries above a pivot lie in ``[0, pivot)``, zero rows sit at
    the bottom.  Pivot selection is smallest absolute value, lowest row index
    on ties, so the output is deterministic.
    """
    H = [list(r) for r in M]
    m = len(H)
    ncols = len(H[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def sub(i, k, q):
        H[i] = [a - q * b for a, b in zip(H[i], H[k])]
        U[i] = [a - q * b for a, b in zip(U[i], U[k])]

    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            cand = [i for i in range(r, m) if H[i][c] != 0]
            if not cand:
                break
            piv = min(cand, key=lambda i: (abs(H[i][c]), i))
            H[r], H[piv] = H[piv], H[r]
            U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c] != 0:
                    sub(i, r, H[i][c] // H[r][c])
                    if H[i][c] != 0:
                        done = False
            if done:
                break
        if r < m and H[r][c] != 0:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
                U[r] = [-x for x in U[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    sub(i, r, q)
            r += 1
    return [tuple(h) for h in H], [tuple(u) for u in U]


def smith_invariants(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero elementary divisors ``d1 | d2 | ...`` of an integer matrix."""
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    out = []
    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remaining entry of row/column t to the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, pi, pj = min(cands)
                A[t], A[pi] = A[pi], A[t]
                for row in A:
                    row[t], row[pj] = row[pj], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        out.append(abs(A[t][t]))
        t += 1
    return out


# --------------------------------------------------------------------------
# sublattices


@dataclass(frozen=True)
class Sublattice:
    """Sublattice of Z^n given by linearly independent basis rows (in HNF)."""

    basis: tuple
    rank: int
    ambient_dim: int

    @classmethod
    def from_rows(cls, rows, ambient_dim):
        H, _ = hermite_normal_form(rows) if rows else ([], [])
        basis = tuple(h for h in H if any(h))
        return cls(basis, len(basis), ambient_dim)


def integer_kernel(M: Sequence[Sequence[int]], ncols: int) -> list[IntVector]:
    """Basis of ``{x in Z^n : row . x = 0 for every row}`` (a saturated lattice)."""
    T = [tuple(M[j][i] for j in range(len(M))) for i in range(ncols)]
    H, U = hermite_normal_form(T)
    return [U[i] for i in range(ncols) if not any(H[i])]


def saturate(span_generators: Sequence[Sequence[int]], ambient_dim: int | None = None) -> Sublattice:
    """Lattice ``span(generators) ∩ Z^n``."""
    gens = [tuple(int(x) for x in g) for g in span_generators]
    if ambient_dim is None:
        if not gens:
            raise DomainError("ambient dimension needed for an empty generator list")
        ambient_dim = len(gens[0])
    gens = [g for g in gens if any(g)]
    if not gens:
        return Sublattice((), 0, ambient_dim)
    complement = integer_kernel(gens, ambient_dim)
    basis = integer_kernel(complement, ambient_dim)
    return Sublattice.from_rows(basis, ambient_dim)


def lattice_index(A: Sublattice, B: Sublattice):
    """Index ``[Z^n : A + B]``, or ``INFINITE`` when ``A + B`` is not full rank."""
    n = A.ambient_dim
    if B.ambient_dim != n:
        raise DomainError("sublattices live in different ambient lattices")
    rows = list(A.basis) + list(B.basis)
    inv = smith_invariants(rows) if rows else []
    if len(inv) < n:
        return INFINITE
    return math.prod(inv)


def integral_volume_form(E_basis: Sublattice) -> Fraction:
    """Squared factor relating integral and Euclidean volume on ``span(E)``.

    Integral volume = sqrt(result) * Euclidean volume.  The square is returned
    so that everything stays rational; it equals ``1 / det(Gram(basis))``.
    """
    gram = [[dot(u, v) for v in E_basis.basis] for u in E_basis.basis]
    return Fraction(1, determinant(gram))
