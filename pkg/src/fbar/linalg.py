"""Small exact linear algebra over Q with Fraction entries."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form and pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)]


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    red, pivots = rref(rows, ncols)
    basis = []
    pset = set(pivots)
    for f in range(ncols):
        if f in pset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(columns: Sequence[Sequence], rhs: Sequence) -> tuple[Optional[list[Fraction]], int]:
    """Solve sum_j x_j columns[j] = rhs.

    Returns ``(x, rank)`` where x is None when the system is inconsistent.
    With full column rank the solution is unique.
    """
    ncols = len(columns)
    nrows = len(rhs)
    aug = [[columns[j][i] for j in range(ncols)] + [rhs[i]] for i in range(nrows)]
    red, pivots = rref(aug, ncols + 1)
    rk = sum(1 for p in pivots if p < ncols)
    if ncols in pivots:
        return None, rk
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x, rk


def inverse(square: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(square)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(square)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


class ColumnSolver:
    """Reusable exact solver for sum_j x_j columns[j] = rhs.

    Factorises once: picks rank-many independent rows and inverts that
    block, so each solve is a product plus an exact check of every row.
    """

    def __init__(self, columns: Sequence[Sequence]):
        self.ncols = len(columns)
        self.rows = [[Fraction(columns[j][i]) for j in range(self.ncols)] for i in range(len(columns[0]) if columns else 0)]
        _, row_pivots = rref(transpose(self.rows), len(self.rows)) if self.rows else ([], [])
        self.rank = len(row_pivots)
        self.full_rank = self.rank == self.ncols
        self._select = row_pivots
        self._inv = inverse([self.rows[i] for i in row_pivots]) if self.full_rank and self.ncols else []

    def solve(self, rhs: Sequence) -> Optional[list[Fraction]]:
        if not self.full_rank:
            raise ValueError("solver needs full column rank")
        b = [Fraction(rhs[i]) for i in self._select]
        x = [sum((a * v for a, v in zip(row, b)), Fraction(0)) for row in self._inv]
        for row, target in zip(self.rows, rhs):
            if sum((a * v for a, v in zip(row, x) if a), Fraction(0)) != target:
                return None
        return x
