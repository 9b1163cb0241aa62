"""Dense Gaussian elimination over Fractions (or mpf)."""

from __future__ import annotations

from typing import Sequence


class SingularSystemError(ArithmeticError):
    pass


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve ``matrix @ x = rhs``; exact when the entries are Fractions."""
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("solve expects a square system")
    a = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        # largest magnitude pivot: harmless for Fractions, needed for mpf
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[piv][col] == 0:
            raise SingularSystemError(f"singular system (column {col})")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        for r in range(col + 1, n):
            f = a[r][col]
            if f == 0:
                continue
            f = f / p
            row_r, row_c = a[r], a[col]
            for c in range(col, n + 1):
                row_r[c] = row_r[c] - f * row_c[c]
    x = [0] * n
    for r in range(n - 1, -1, -1):
        s = a[r][n]
        for c in range(r + 1, n):
            s = s - a[r][c] * x[c]
        x[r] = s / a[r][r]
    return x
