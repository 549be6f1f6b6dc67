"""Exact linear algebra over the rationals (fraction-free elimination)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fr = [Fraction(v) for v in row]
        scale = lcm(*(v.denominator for v in fr)) if fr else 1
        out.append([int(v * scale) for v in fr])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix given as a list of rows.

    Bareiss elimination keeps every intermediate an exact integer, so no
    tolerance is involved.
    """
    a = _integer_rows(rows)
    if not a or not a[0]:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def solve_unique(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]):
    """Coefficients ``lam`` with sum(lam[k] * columns[k]) == target, or None.

    ``columns`` must be linearly independent; the solution is then unique.
    """
    k = len(columns)
    nrows = len(target)
    # augmented system rows: [col_0[i], ..., col_{k-1}[i] | target[i]]
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])]
           for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if p is None:
            raise ValueError("columns are linearly dependent")
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][k] != 0 for i in range(r, nrows)):
        return None
    return [aug[i][k] for i in range(k)]
