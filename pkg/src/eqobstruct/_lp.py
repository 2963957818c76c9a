"""Tiny exact LP solver (two-phase tableau simplex, Bland's rule).

Solves ``max c·x  s.t.  A x = b, x >= 0`` over Fractions. Sizes here are a
handful of variables, so clarity wins over speed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

INFEASIBLE, OPTIMAL, UNBOUNDED = "infeasible", "optimal", "unbounded"


def _pivot(T: list[list[Fraction]], r: int, c: int):
    pr = T[r]
    pv = pr[c]
    if pv != 1:
        T[r] = pr = [x / pv for x in pr]
    for i, row in enumerate(T):
        if i != r and row[c]:
            f = row[c]
            T[i] = [x - f * y for x, y in zip(row, pr)]


def _run(T, basis, obj_row, ncols) -> bool:
    """Maximize; objective row holds reduced costs (negative = improving).

    Returns False when unbounded.
    """
    m = len(basis)
    while True:
        enter = next((j for j in range(ncols) if T[obj_row][j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, best[1], enter)
        basis[best[1]] = enter


def solve(A: Sequence[Sequence], b: Sequence, c: Sequence | None = None):
    """Return ``(status, value, x)``; ``c=None`` is a pure feasibility test."""
    m = len(A)
    n = len(A[0]) if m else 0
    if c is None:
        c = [0] * n
    rows = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        rows.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    width = n + m
    # phase 1: maximize -sum(artificials)
    obj = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(n):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    T = rows + [obj]
    basis = list(range(n, n + m))
    _run(T, basis, m, width)
    if T[m][-1] != 0:
        return INFEASIBLE, None, None
    # drive artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(basis):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, i, j)
            basis[i] = j
        i += 1
    m2 = len(basis)
    T = [row[:n] + [row[-1]] for row in T[:m2]]
    obj = [Fraction(-x) for x in c] + [Fraction(0)]
    for i, j in enumerate(basis):
        if obj[j]:
            f = obj[j]
            obj = [x - f * y for x, y in zip(obj, T[i])]
    T.append(obj)
    if not _run(T, basis, m2, n):
        return UNBOUNDED, None, None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return OPTIMAL, T[m2][-1], x
