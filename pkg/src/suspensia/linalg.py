"""Small exact dense linear algebra over an arbitrary coefficient field.

Entries only need +, -, *, / and truthiness (nonzero test), so the helpers
work for Fraction and CyclotomicNumber alike.
"""

from __future__ import annotations

from fractions import Fraction


class SingularMatrixError(ValueError):
    """The linear system has no unique solution."""


def solve_linear(matrix, rhs):
    """Solve the square system matrix * x = rhs by Gaussian elimination."""
    n = len(matrix)
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    if any(len(row) != n + 1 for row in rows) or len(rhs) != n:
        raise ValueError("system dimensions do not match")
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            raise SingularMatrixError(f"no pivot in column {col}")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = rows[col][col]
        rows[col] = [c / inv for c in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [rows[r][n] for r in range(n)]


def rank(matrix) -> int:
    """Rank of an integer or rational matrix, computed over Q."""
    rows = [[Fraction(c) for c in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col]
        rows[r] = [c / inv for c in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def matmul(a, b):
    """Product of two matrices given as sequences of rows."""
    return [
        [sum(x * y for x, y in zip(row, col)) for col in zip(*b)]
        for row in a
    ]
