"""Exact rational primal simplex with Bland's rule.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` for ``b >= 0`` (so the slack
basis is feasible and no phase one is needed).  The optimal dual is read
off the reduced costs of the slack columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class UnboundedError(ArithmeticError):
    pass


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    x: tuple[Fraction, ...]
    duals: tuple[Fraction, ...]
    pivots: int


def maximize(
    c: Sequence[int | Fraction],
    A: Sequence[Sequence[int | Fraction]],
    b: Sequence[int | Fraction],
    max_pivots: int = 100_000,
) -> LPResult:
    m, nv = len(A), len(c)
    if len(b) != m or any(len(row) != nv for row in A):
        raise ValueError("inconsistent LP dimensions")
    if any(bi < 0 for bi in b):
        raise ValueError("right-hand side must be nonnegative")
    width = nv + m
    zero = Fraction(0)
    # rows: coefficients then rhs at index `width`
    T = []
    for i, row in enumerate(A):
        r = [Fraction(v) for v in row] + [zero] * m + [Fraction(b[i])]
        r[nv + i] = Fraction(1)
        T.append(r)
    obj = [Fraction(v) for v in c] + [zero] * m + [zero]  # reduced costs; obj[width] = -value
    basis = list(range(nv, nv + m))

    pivots = 0
    while True:
        enter = next((j for j in range(width) if obj[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise UnboundedError("LP is unbounded")
        _pivot(T, obj, leave, enter)
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("simplex pivot limit exceeded")

    x = [zero] * width
    for i, j in enumerate(basis):
        x[j] = T[i][width]
    duals = tuple(-obj[nv + i] for i in range(m))
    return LPResult(-obj[width], tuple(x[:nv]), duals, pivots)


def _pivot(T: list[list[Fraction]], obj: list[Fraction], r: int, s: int) -> None:
    prow = T[r]
    p = prow[s]
    if p != 1:
        inv = 1 / p
        for k, v in enumerate(prow):
            if v:
                prow[k] = v * inv
    nz = [k for k, v in enumerate(prow) if v]
    for i, row in enumerate(T):
        if i == r:
            continue
        f = row[s]
        if f:
            for k in nz:
                row[k] -= f * prow[k]
    f = obj[s]
    if f:
        for k in nz:
            obj[k] -= f * prow[k]
