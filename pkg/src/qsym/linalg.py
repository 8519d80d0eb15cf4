"""Exact Gaussian elimination over any field whose elements support + - * and inversion."""
from __future__ import annotations

from typing import Callable, Sequence


def _invert(x):
    inv = getattr(x, "inverse", None)
    return inv() if inv is not None else 1 / x


def solve_consistent(matrix: Sequence[Sequence], rhs: Sequence, zero,
                     invert: Callable = _invert) -> list | None:
    """A solution of matrix * x = rhs, or None when the system is inconsistent.

    Free variables are set to zero.
    """
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    ncols = len(matrix[0]) if matrix else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = invert(rows[r][c])
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for row in rows[r:]:
        if row[-1] != 0:
            return None
    solution = [zero] * ncols
    for i, c in enumerate(pivots):
        solution[c] = rows[i][-1]
    return solution


def solve(matrix, rhs, zero, invert: Callable = _invert) -> list:
    sol = solve_consistent(matrix, rhs, zero, invert)
    if sol is None:
        raise ValueError("inconsistent linear system")
    return sol
