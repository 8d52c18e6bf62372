"""Exact linear algebra over Q on dense row lists."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where ``rows`` are the nonzero reduced rows
    (pivot entries equal to 1) and ``pivots`` their pivot columns, increasing.
    """
    mat = [[Fraction(x) for x in r] for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def sparse_rank(rows: Sequence[dict]) -> int:
    """Rank of rows given as {column: value} dicts."""
    cols = sorted({c for r in rows for c in r})
    where = {c: i for i, c in enumerate(cols)}
    dense = []
    for r in rows:
        v = [Fraction(0)] * len(cols)
        for c, x in r.items():
            v[where[c]] = Fraction(x)
        dense.append(v)
    return rank(dense)
