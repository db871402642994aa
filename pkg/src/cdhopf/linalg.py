"""Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import Element


def _rows(vectors) -> list[list[Fraction]]:
    rows = []
    for v in vectors:
        if isinstance(v, Element):
            rows.append(list(v.coeffs))
        else:
            rows.append([Fraction(x) for x in v])
    return rows


def row_reduce(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(vectors: Sequence) -> int:
    rows = _rows(vectors)
    if not rows:
        return 0
    return len(row_reduce(rows)[1])


def solve(columns: Sequence, target) -> list[Fraction] | None:
    """Coefficients x with sum x_i columns[i] == target, or None."""
    cols = _rows(columns)
    t = _rows([target])[0]
    k = len(cols)
    aug = [[cols[j][i] for j in range(k)] + [t[i]] for i in range(len(t))]
    red, piv = row_reduce(aug)
    if k in piv:
        return None
    x = [Fraction(0)] * k
    for row, c in zip(red, piv):
        x[c] = row[k]
    return x
