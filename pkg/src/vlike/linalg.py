"""Small exact linear algebra kernel over rationals.

Dense matrices are lists of lists of ``Fraction``.  Everything is computed by
exact Gaussian elimination; there are no tolerances anywhere.  Sizes in this
package stay in the low hundreds, so simplicity wins over asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def _copy(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(map(Fraction, row)) for row in rows]


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return rank_with_pivots(rows)[0]


def rank_with_pivots(rows: Sequence[Sequence[Fraction]]) -> tuple[int, list[int]]:
    """Rank and the pivot column indices of the row echelon form."""
    m = _copy(rows)
    if not m:
        return 0, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        for i in range(r + 1, nrows):
            if m[i][c]:
                factor = m[i][c] * inv
                row_i, row_r = m[i], m[r]
                for j in range(c, ncols):
                    row_i[j] -= factor * row_r[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return r, pivots


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form together with its pivot columns."""
    m = _copy(rows)
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def nullspace(rows: Sequence[Sequence[Fraction]]) -> list[Vector]:
    """Basis of the right kernel, one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Vector]:
    """One exact solution of ``rows @ x = rhs``, or None if inconsistent."""
    if not rows:
        return [] if all(b == 0 for b in rhs) else None
    ncols = len(rows[0])
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def inverse(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    """Inverse of a square nonsingular matrix."""
    n = len(rows)
    aug = [list(map(Fraction, row)) + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def matvec(rows: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in rows]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols]
            for row in a]


def identity(n: int) -> Matrix:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def zero_matrix(nrows: int, ncols: int) -> Matrix:
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def is_zero_matrix(rows: Sequence[Sequence[Fraction]]) -> bool:
    return all(x == 0 for row in rows for x in row)
