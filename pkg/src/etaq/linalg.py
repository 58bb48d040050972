"""Small exact dense linear algebra over Z and Q.

Matrices are tuples of row tuples holding ``int`` or ``Fraction``.  Sizes in
this package stay at ``sigma_0(N)``, a few dozen at most, so plain Python
loops are fast enough and keep every step exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = tuple[tuple, ...]


def as_matrix(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def diagonal(entries: Sequence) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


def transpose(M: Matrix) -> Matrix:
    return tuple(zip(*M))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if len(A[0]) != len(B):
        raise ValueError(f"shape mismatch {len(A)}x{len(A[0])} @ {len(B)}x{len(B[0])}")
    cols = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in A)


def matvec(A: Matrix, x: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def kron(A: Matrix, B: Matrix) -> Matrix:
    """Kronecker product; the row index of ``A`` is the most significant."""
    return tuple(
        tuple(a * b for a in ra for b in rb)
        for ra in A
        for rb in B
    )


def is_integral(M) -> bool:
    return all(Fraction(x).denominator == 1 for row in M for x in row)


def to_int(M: Matrix) -> Matrix:
    if not is_integral(M):
        raise ValueError("matrix has non-integral entries")
    return tuple(tuple(int(x) for x in row) for row in M)


def inverse(M: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def solve(M: Matrix, b: Sequence) -> tuple[Fraction, ...]:
    return matvec(inverse(M), [Fraction(x) for x in b])


def determinant(M: Matrix) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    n = len(M)
    a = [list(map(int, row)) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def column_denominator_lcm(M: Matrix, j: int) -> int:
    return lcm(*(Fraction(row[j]).denominator for row in M))


def primitive_column_scaling(M: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Scale each column by the least positive integer making it integral."""
    n_cols = len(M[0])
    scales = tuple(column_denominator_lcm(M, j) for j in range(n_cols))
    scaled = tuple(tuple(int(row[j] * scales[j]) for j in range(n_cols)) for row in M)
    return scaled, scales


def smith_form(M: Matrix) -> tuple[tuple[int, ...], Matrix, Matrix]:
    """Smith normal form of a nonsingular square integer matrix.

    Returns ``(diag, U, V)`` with ``U @ M @ V == diagonal(diag)``, ``U`` and
    ``V`` unimodular, and ``diag[i] | diag[i+1]``, all positive.  Pivots on
    the entry of least absolute value in the remaining block.
    """
    n = len(M)
    a = [list(map(int, row)) for row in M]
    U = [list(r) for r in identity(n)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        a[dst] = [x - f * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x - f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] -= f * row[src]
        for row in V:
            row[dst] -= f * row[src]

    for k in range(n):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(k, n) for j in range(k, n) if a[i][j]]
            if not nz:
                raise ValueError("matrix is singular")
            _, i, j = min(nz)
            swap_rows(k, i)
            swap_cols(k, j)
            p = a[k][k]
            clean = True
            for i in range(k + 1, n):
                if a[i][k]:
                    add_row(i, k, a[i][k] // p)
                    clean &= a[i][k] == 0
            for j in range(k + 1, n):
                if a[k][j]:
                    add_col(j, k, a[k][j] // p)
                    clean &= a[k][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(k + 1, n) for j in range(k + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            # fold the offending row in so its remainder becomes the next pivot
            a[k] = [x + y for x, y in zip(a[k], a[bad[0]])]
            U[k] = [x + y for x, y in zip(U[k], U[bad[0]])]
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            U[k] = [-x for x in U[k]]
    return tuple(a[i][i] for i in range(n)), as_matrix(U), as_matrix(V)


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
