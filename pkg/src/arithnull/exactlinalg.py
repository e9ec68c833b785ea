"""Exact linear algebra over Z and Q.

Everything here works on lists of lists of ``int``/``Fraction``.  The solver
uses fraction-free (Bareiss) elimination on an integer matrix obtained by
clearing row denominators, so intermediate entries stay integral and their
size is controlled by the Sylvester identity.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def integer_rows(rows: Sequence[Sequence]) -> List[List[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = _lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Bareiss determinant; exact for rational entries."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in matrix):
        raise ValueError("determinant of a non-square matrix")
    scale = Fraction(1)
    rows = []
    for row in matrix:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = _lcm(den, x.denominator)
        scale /= den
        rows.append([int(x * den) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k]:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pk = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - a * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * rows[n - 1][n - 1] * scale


def bareiss_echelon(rows: List[List[int]], ncols: int = None) -> Tuple[List[List[int]], List[int]]:
    """In-place fraction-free row echelon form of an integer matrix.

    Pivot columns are taken left to right.  Returns the rows and the list of
    pivot columns (pivot ``k`` sits in row ``k``).  ``ncols`` limits the
    columns eligible as pivots; columns beyond it are carried along.
    """
    m = len(rows)
    width = len(rows[0]) if rows else 0
    if ncols is None:
        ncols = width
    pivots: List[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = None
        for i in range(r, m):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        pk = pr[c]
        for i in range(r + 1, m):
            ri = rows[i]
            a = ri[c]
            for j in range(c + 1, width):
                ri[j] = (pk * ri[j] - a * pr[j]) // prev
            ri[c] = 0
        prev = pk
        pivots.append(c)
        r += 1
    return rows, pivots


def solve(A: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """One exact solution of ``A x = b`` or ``None`` when inconsistent.

    Free variables are set to zero, so the solution is supported on the
    leftmost independent columns.
    """
    m = len(A)
    ncols = len(A[0]) if m else 0
    aug = integer_rows([list(A[i]) + [b[i]] for i in range(m)])
    rows, pivots = bareiss_echelon(aug, ncols)
    rank = len(pivots)
    for i in range(rank, m):
        if rows[i][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for k in range(rank - 1, -1, -1):
        c = pivots[k]
        row = rows[k]
        acc = Fraction(row[ncols])
        for j in pivots[k + 1:]:
            if row[j]:
                acc -= row[j] * x[j]
        x[c] = acc / row[c]
    return x


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    _, piv = bareiss_echelon(integer_rows(A))
    return len(piv)


def inverse(A: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(A)
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        x = solve(A, e)
        if x is None:
            raise ValueError("singular matrix")
        cols.append(x)
    if rank(A) < n:
        raise ValueError("singular matrix")
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> List[List[Fraction]]:
    width = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [Fraction(0)] * width
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A: Sequence[Sequence], v: Sequence) -> List[Fraction]:
    return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A]


def identity(n: int) -> List[List[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def charpoly(A: Sequence[Sequence]) -> List[Fraction]:
    """Coefficients ``[b_0, ..., b_{D-1}, 1]`` of det(t I - A), Faddeev-LeVerrier."""
    n = len(A)
    A = [[Fraction(x) for x in row] for row in A]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        M = matmul(A, M) if k > 1 else [[Fraction(0)] * n for _ in range(n)]
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            M[i][i] += c_prev
        AM = matmul(A, M)
        tr = sum(AM[i][i] for i in range(n))
        coeffs[n - k] = -tr / k
    return coeffs


def row_lattice_basis(vectors: Sequence[Sequence[int]]) -> List[List[int]]:
    """Echelon basis of the Z-module spanned by integer vectors (Hermite style).

    Rows are processed column by column with extended-gcd row operations; the
    result has strictly increasing pivot columns and positive pivots.
    """
    rows = [list(map(int, v)) for v in vectors if any(v)]
    if not rows:
        return []
    width = len(rows[0])
    basis: List[List[int]] = []
    r = 0
    for c in range(width):
        # collapse column c among rows[r:] with gcd steps
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c]]
            if len(nz) <= 1:
                break
            i0 = min(nz, key=lambda i: abs(rows[i][c]))
            for i in nz:
                if i != i0:
                    q = rows[i][c] // rows[i0][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[i0])]
        nz = [i for i in range(r, len(rows)) if rows[i][c]]
        if not nz:
            continue
        i0 = nz[0]
        rows[r], rows[i0] = rows[i0], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-a for a in rows[r]]
        # reduce entries above the pivot
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
        rows = rows[:r] + [row for row in rows[r:] if any(row)]
        if r == len(rows):
            break
    basis = rows[:r]
    return basis


def lattice_coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    """Integer coordinates of ``v`` in an echelon lattice basis."""
    rest = list(v)
    coords = []
    for b in basis:
        c = next(j for j, x in enumerate(b) if x)
        if rest[c] % b[c]:
            raise ValueError(f"{list(v)} is not in the lattice")
        q = rest[c] // b[c]
        coords.append(q)
        rest = [a - q * x for a, x in zip(rest, b)]
    if any(rest):
        raise ValueError(f"{list(v)} is not in the lattice")
    return coords
