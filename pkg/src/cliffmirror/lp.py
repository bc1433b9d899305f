"""Exact rational linear programming (dense two-phase simplex, Bland's rule)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    piv = T[r][c]
    T[r] = [a / piv for a in T[r]]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [a - f * b for a, b in zip(row, T[r])]
    basis[r] = c


def _simplex(T, basis, allowed: int) -> bool:
    """Maximize the objective stored in the last row of ``T``.

    The last row holds reduced costs as ``-c`` (so optimality means all
    entries nonnegative).  Only columns ``< allowed`` may enter.  Returns
    False on unboundedness.
    """
    obj = T[-1]
    while True:
        obj = T[-1]
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(len(T) - 1):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], enter)


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Maximize ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``.

    All variables are free.  Arithmetic is exact over ``Fraction``.
    """
    n = len(c)
    # x = xp - xm, both >= 0; slack per inequality.
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    n_ub = len(A_ub)
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        slack = [Fraction(int(j == k)) for j in range(n_ub)]
        rows.append([Fraction(v) for v in a] + [-Fraction(v) for v in a] + slack)
        rhs.append(Fraction(b))
    for a, b in zip(A_eq, b_eq):
        rows.append([Fraction(v) for v in a] + [-Fraction(v) for v in a] + [Fraction(0)] * n_ub)
        rhs.append(Fraction(b))
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    m = len(rows)
    width = 2 * n + n_ub
    # Phase 1 with one artificial per row.
    T = [row + [Fraction(int(i == k)) for k in range(m)] + [rhs[i]] for i, row in enumerate(rows)]
    basis = [width + i for i in range(m)]
    phase1 = [Fraction(0)] * (width + m + 1)
    for row in T:
        for j in range(width):
            phase1[j] -= row[j]
        phase1[-1] -= row[-1]
    T.append(phase1)
    _simplex(T, basis, width)
    if T[-1][-1] != 0:
        return LPResult("infeasible")
    # Drive remaining artificials out of the basis.
    for i in range(m):
        if basis[i] >= width:
            j = next((j for j in range(width) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, basis, i, j)
    keep = [i for i in range(m) if basis[i] < width]
    T = [T[i][:width] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    cost = [-Fraction(v) for v in c] + [Fraction(v) for v in c] + [Fraction(0)] * n_ub + [Fraction(0)]
    for i, b in enumerate(basis):
        if cost[b] != 0:
            f = cost[b]
            cost = [a - f * r for a, r in zip(cost, T[i])]
    T.append(cost)
    if not _simplex(T, basis, width):
        return LPResult("unbounded")
    vals = [Fraction(0)] * width
    for i, b in enumerate(basis):
        vals[b] = T[i][-1]
    x = tuple(vals[j] - vals[n + j] for j in range(n))
    return LPResult("optimal", x, sum(Fraction(ci) * xi for ci, xi in zip(c, x)))
