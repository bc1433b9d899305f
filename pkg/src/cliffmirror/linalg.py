"""Exact integer and rational linear algebra.

Vectors are tuples of Python ints, matrices are lists of such rows.  Python
ints are arbitrary precision, so nothing here can overflow.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple[int, ...]
Matrix = list[list[int]]


def pairing(m: Sequence[int], n: Sequence[int]) -> int:
    """Natural pairing of a point of M with a point of N (dot product)."""
    if len(m) != len(n):
        raise ValueError(f"rank mismatch: {len(m)} != {len(n)}")
    return sum(a * b for a, b in zip(m, n))


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> Vector:
    """First lattice point on the ray through ``v``."""
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


def add(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: int, v: Sequence[int]) -> Vector:
    return tuple(c * a for a in v)


def vsum(vectors: Sequence[Sequence[int]], dim: int) -> Vector:
    out = [0] * dim
    for v in vectors:
        for i, a in enumerate(v):
            out[i] += a
    return tuple(out)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(pairing(row, v) for row in A)


# -- rational elimination ---------------------------------------------------


def rref(A: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return [], []
    rows, cols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M[:r], pivots


def rank(A: Sequence[Sequence]) -> int:
    """Rank over the rationals. The empty matrix has rank 0."""
    if not A or not len(A[0]):
        return 0
    if all(type(x) is int for row in A for x in row):
        return _int_rank(A)
    return len(rref(A)[1])


def _int_rank(A: Sequence[Sequence[int]]) -> int:
    # fraction-free elimination, rows kept primitive to bound growth
    M = [list(row) for row in A]
    r = 0
    for c in range(len(M[0])):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(r + 1, len(M)):
            f = M[i][c]
            if f:
                row = [piv * a - f * b for a, b in zip(M[i], M[r])]
                g = gcd(*row)
                M[i] = [a // g for a in row] if g > 1 else row
        r += 1
        if r == len(M):
            break
    return r


def independent_rows(A: Sequence[Sequence[int]]) -> list[int]:
    """Indices of a greedy maximal linearly independent subset of rows."""
    chosen: list[int] = []
    basis: list[Sequence[int]] = []
    for i, row in enumerate(A):
        if rank(basis + [row]) > len(basis):
            basis.append(row)
            chosen.append(i)
    return chosen


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One rational solution of ``A x = b``, or None when inconsistent."""
    if not A:
        return None
    cols = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug)
    if cols in piv:
        return None
    x = [Fraction(0)] * cols
    for row, c in zip(R, piv):
        x[c] = row[-1]
    return x


def det(A: Sequence[Sequence]) -> Fraction:
    """Determinant over Q by Gaussian elimination."""
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def int_det(A: Sequence[Sequence[int]]) -> int:
    d = det(A)
    assert d.denominator == 1
    return int(d)


# -- Hermite and Smith normal forms -----------------------------------------


def hermite_normal_form(A: Sequence[Sequence[int]]) -> Matrix:
    """Row-style HNF of the row lattice of ``A``.

    Nonzero rows only; pivots positive and strictly increasing in column,
    entries above a pivot reduced into ``[0, pivot)``.
    """
    M = [list(row) for row in A]
    if not M:
        return []
    rows, cols = len(M), len(M[0])
    r = 0
    for c in range(cols):
        if r == rows:
            break
        # Euclid on column c among rows r..
        while True:
            nz = [i for i in range(r, rows) if M[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(M[i][c]))
            M[r], M[p] = M[p], M[r]
            done = True
            for i in range(r + 1, rows):
                if M[i][c] != 0:
                    q = M[i][c] // M[r][c]
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    if M[i][c] != 0:
                        done = False
            if done:
                break
        if M[r][c] == 0:
            continue
        if M[r][c] < 0:
            M[r] = [-a for a in M[r]]
        for i in range(r):
            q = M[i][c] // M[r][c]
            if q:
                M[i] = [a - q * b for a, b in zip(M[i], M[r])]
        r += 1
    return M[:r]


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, S, V)`` with ``U A V = S``.

    U and V are unimodular; S is diagonal with nonnegative entries
    ``d_1 | d_2 | ...``.
    """
    S = [list(row) for row in A]
    m = len(S)
    n = len(S[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        S[dst] = [a - q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in S:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    add_row(i, t, q)
                    if S[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    add_col(j, t, q)
                    if S[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility of the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % S[t][t]),
                None,
            )
            if bad is None:
                break
            # fold the offending row into row t and start over
            S[t] = [a + b for a, b in zip(S[t], S[bad[0]])]
            U[t] = [a + b for a, b in zip(U[t], U[bad[0]])]
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, S, V


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith form."""
    if not A or not len(A[0]):
        return []
    _, S, _ = smith_normal_form(A)
    return [S[i][i] for i in range(min(len(S), len(S[0]))) if S[i][i]]


def kernel_basis(A: Sequence[Sequence[int]], cols: int | None = None) -> list[Vector]:
    """Basis of the integer kernel ``{v : A v = 0}``.

    The returned lattice is saturated and the basis is the HNF of that
    lattice, rows in pivot order.  ``cols`` is required when ``A`` has no rows.
    """
    if not A:
        if cols is None:
            raise ValueError("cols required for an empty matrix")
        return [tuple(row) for row in identity(cols)]
    n = len(A[0])
    _, S, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(S), n)) if S[i][i])
    basis = [tuple(V[i][j] for i in range(n)) for j in range(r, n)]
    return [tuple(row) for row in hermite_normal_form(basis)]


def in_lattice(v: Sequence[int], generators: Sequence[Sequence[int]]) -> bool:
    """Whether ``v`` is an integer combination of ``generators``."""
    if not generators:
        return not any(v)
    U, S, V = smith_normal_form(generators)
    # x G = v  <=>  (x U^-1) S = v V
    w = [pairing(v, [row[j] for row in V]) for j in range(len(v))]
    for j, wj in enumerate(w):
        d = S[j][j] if j < len(S) else 0
        if d == 0:
            if wj:
                return False
        elif wj % d:
            return False
    return True


def quotient_invariants(generators: Sequence[Sequence[int]], dim: int) -> tuple[int, list[int]]:
    """Structure of ``Z^dim / span(generators)``: (free rank, torsion factors > 1)."""
    if not generators:
        return dim, []
    inv = invariant_factors(generators)
    return dim - len(inv), [d for d in inv if d > 1]
