"""Exact linear algebra over the rationals (row reduction with Fraction)."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


def _to_rows(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in matrix]


def rref(matrix: Sequence[Sequence], rhs: Optional[Sequence] = None):
    """Reduced row echelon form.

    Returns ``(rows, pivots, rhs)`` where ``rows`` is the reduced matrix,
    ``pivots`` the pivot column indices, and ``rhs`` the transformed
    right-hand side (or None).
    """
    rows = _to_rows(matrix)
    b = None if rhs is None else [Fraction(v) for v in rhs]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            if b is not None:
                b[r], b[piv] = b[piv], b[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [v / p for v in rows[r]]
            if b is not None:
                b[r] /= p
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * e for a, e in zip(rows[i], rows[r])]
                if b is not None:
                    b[i] -= f * b[r]
        pivots.append(c)
        r += 1
    return rows, pivots, b


def rank(matrix: Sequence[Sequence]) -> int:
    if not matrix or not matrix[0]:
        return 0
    return len(rref(matrix)[1])


def solve(matrix: Sequence[Sequence], rhs: Sequence, n_cols: Optional[int] = None):
    """Solve ``A x = b`` exactly.

    Returns ``(x, unique)``, with ``x`` one solution (free variables set to
    zero) or ``None`` when the system is inconsistent. ``n_cols`` is needed
    only when ``matrix`` has no rows.
    """
    if not matrix:
        return [Fraction(0)] * (n_cols or 0), n_cols == 0
    n_cols = len(matrix[0])
    rows, pivots, b = rref(matrix, rhs)
    for i in range(len(pivots), len(rows)):
        if b[i] != 0:
            return None, False
    x = [Fraction(0)] * n_cols
    for i, c in enumerate(pivots):
        x[c] = b[i]
    return x, len(pivots) == n_cols


def nullspace_dim(matrix: Sequence[Sequence], n_cols: int) -> int:
    if not matrix:
        return n_cols
    return n_cols - rank(matrix)


def int_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free Bareiss elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
