"""Exact rational linear programming.

``maximize(c, A, b)`` solves max c.x subject to A x <= b with x free. The
systems met here have few variables and many rows, so the work is done on
the dual, min b.y subject to A^T y = c, y >= 0, with a two-phase tableau
simplex under Bland's rule. The primal optimum is recovered from the final
dual basis by one exact square solve. Arithmetic runs on gmpy2 rationals
and results are handed back as Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import gmpy2

from .exact import solve


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" (primal infeasible or unbounded)
    x: list | None = None
    value: Fraction | None = None


def _pivot(T, obj, basis, r, j):
    row = T[r]
    p = row[j]
    if p != 1:
        inv = 1 / p
        row = [v * inv for v in row]
        T[r] = row
    nz = [k for k, v in enumerate(row) if v != 0]
    for i, other in enumerate(T):
        if i != r:
            f = other[j]
            if f != 0:
                for k in nz:
                    other[k] -= f * row[k]
    f = obj[j]
    if f != 0:
        for k in nz:
            obj[k] -= f * row[k]
    basis[r] = j


def _run(T, obj, basis, allowed: int) -> str:
    """Minimize; entering columns restricted to indices < ``allowed``."""
    rhs = len(obj) - 1
    while True:
        j = next((k for k in range(allowed) if obj[k] < 0), None)
        if j is None:
            return "optimal"
        best = None
        for i, row in enumerate(T):
            a = row[j]
            if a > 0:
                ratio = row[rhs] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _pivot(T, obj, basis, best[1], j)


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    p = len(c)
    q = len(A)
    F = gmpy2.mpq
    # dual standard form: E y = g, E = A^T (p x q), g = c, cost f = b
    E = [[F(A[i][k]) for i in range(q)] for k in range(p)]
    g = [F(v) for v in c]
    f = [F(v) for v in b]
    T = []
    for k in range(p):
        sgn = -1 if g[k] < 0 else 1
        row = [sgn * v for v in E[k]] + [F(0)] * p + [sgn * g[k]]
        row[q + k] = F(1)
        T.append(row)
    basis = [q + k for k in range(p)]
    width = q + p
    obj = [F(0)] * (width + 1)
    for row in T:
        for k in range(q):
            obj[k] -= row[k]
        obj[width] -= row[width]
    if _run(T, obj, basis, q) != "optimal" or obj[width] != 0:
        return LPResult("infeasible")
    # drive zero-level artificials out of the basis
    for i in range(len(T)):
        if basis[i] >= q:
            j = next((k for k in range(q) if T[i][k] != 0), None)
            if j is None:
                raise ValueError("constraint matrix must have full column rank")
            _pivot(T, obj, basis, i, j)
    obj = f + [F(0)] * p + [F(0)]
    for i, row in enumerate(T):
        cb = f[basis[i]]
        if cb != 0:
            for k in range(width + 1):
                obj[k] -= cb * row[k]
    if _run(T, obj, basis, q) != "optimal":
        return LPResult("infeasible")
    # primal solution: B^T x = f_B
    rows = [[_frac(E[k][basis[i]]) for k in range(p)] for i in range(p)]
    x = solve(rows, [_frac(f[basis[i]]) for i in range(p)])
    if x is None:
        raise ValueError("singular final basis")
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult("optimal", x, value)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def max_slack_point(nvars: int, strict_rows, weak_rows=()) -> tuple[list[Fraction], Fraction] | None:
    """Point satisfying every strict row ``a.x < b`` and weak row ``a.x <= b``.

    Maximizes a common slack s (capped at 1) on the strict rows; returns
    ``(x, s)`` with s > 0, or ``None`` when the strict system is infeasible.
    The caller's rows must bound every variable.
    """
    A, b = [], []
    for coeffs, rhs in strict_rows:
        A.append(list(coeffs) + [1])
        b.append(rhs)
    for coeffs, rhs in weak_rows:
        A.append(list(coeffs) + [0])
        b.append(rhs)
    A.append([0] * nvars + [1])
    b.append(1)
    res = maximize([0] * nvars + [1], A, b)
    if res.status != "optimal" or res.value <= 0:
        return None
    x = res.x[:nvars]
    s = res.x[nvars]
    for coeffs, rhs in strict_rows:
        assert sum(a * v for a, v in zip(coeffs, x)) + s <= rhs
    for coeffs, rhs in weak_rows:
        assert sum(a * v for a, v in zip(coeffs, x)) <= rhs
    return x, s
