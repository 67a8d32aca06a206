"""Exact rational linear programming via two-phase primal simplex.

Variables are free rationals; the solver converts to standard form
internally (x = x+ - x-, slack variables, phase-1 artificials) and
pivots with Bland's rule, so it terminates on every input and needs no
tolerance knobs.  Feasibility answers are exact booleans, which is what
the strict-interior and admissibility tests downstream rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    value: Fraction | None = None
    x: list[Fraction] | None = None


def _simplex(tableau: list[list[Fraction]], basis: list[int], ncols: int) -> str:
    """Run primal simplex on a tableau in canonical form.

    tableau[i] = row of length ncols+1 (last entry = rhs), tableau[-1] =
    objective row (minimization, last entry = -objective value).  Bland's
    rule: entering = smallest-index column with negative reduced cost,
    leaving = smallest-index basic variable among the minimum ratios.
    """
    m = len(tableau) - 1
    while True:
        obj = tableau[-1]
        enter = -1
        for j in range(ncols):
            if obj[j] < 0:
                enter = j
                break
        if enter == -1:
            return OPTIMAL
        leave = -1
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave == -1:
            return UNBOUNDED
        piv = tableau[leave][enter]
        inv = 1 / piv
        tableau[leave] = [v * inv for v in tableau[leave]]
        prow = tableau[leave]
        for i in range(m + 1):
            if i != leave and tableau[i][enter] != 0:
                f = tableau[i][enter]
                tableau[i] = [v - f * p for v, p in zip(tableau[i], prow)]
        basis[leave] = enter


def solve_lp(
    c,
    a_ub=None,
    b_ub=None,
    a_eq=None,
    b_eq=None,
    maximize: bool = False,
) -> LPResult:
    """Optimize c.x subject to a_ub.x <= b_ub and a_eq.x = b_eq, x free.

    Returns an LPResult whose ``x`` is an optimal point when status is
    "optimal".  For "unbounded" no point is returned.
    """
    c = [Fraction(v) for v in c]
    n = len(c)
    if maximize:
        c = [-v for v in c]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    nslack = len(a_ub) if a_ub else 0
    if a_ub:
        for k, row in enumerate(a_ub):
            r = [Fraction(v) for v in row]
            assert len(r) == n
            rows.append(r)
            rhs.append(Fraction(b_ub[k]))
    if a_eq:
        for k, row in enumerate(a_eq):
            r = [Fraction(v) for v in row]
            assert len(r) == n
            rows.append(r)
            rhs.append(Fraction(b_eq[k]))
    m = len(rows)

    # standard-form columns: x+ (n), x- (n), slacks (nslack), artificials (m)
    ncols = 2 * n + nslack + m
    tableau: list[list[Fraction]] = []
    for i in range(m):
        row = [Fraction(0)] * (ncols + 1)
        sign = 1 if rhs[i] >= 0 else -1
        for j in range(n):
            row[j] = sign * rows[i][j]
            row[n + j] = -sign * rows[i][j]
        if i < nslack:
            row[2 * n + i] = Fraction(sign)
        row[2 * n + nslack + i] = Fraction(1)
        row[-1] = sign * rhs[i]
        tableau.append(row)
    basis = [2 * n + nslack + i for i in range(m)]

    # phase 1: minimize sum of artificials
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(2 * n + nslack, ncols):
        obj[j] = Fraction(1)
    tableau.append(obj)
    for i in range(m):
        tableau[-1] = [v - w for v, w in zip(tableau[-1], tableau[i])]
    status = _simplex(tableau, basis, ncols)
    assert status == OPTIMAL  # phase-1 objective is bounded below by 0
    if -tableau[-1][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive leftover artificials out of the basis (degenerate rows)
    for i in range(m):
        if basis[i] >= 2 * n + nslack:
            pivot_col = -1
            for j in range(2 * n + nslack):
                if tableau[i][j] != 0:
                    pivot_col = j
                    break
            if pivot_col == -1:
                continue  # redundant constraint row
            piv = tableau[i][pivot_col]
            inv = 1 / piv
            tableau[i] = [v * inv for v in tableau[i]]
            for k in range(len(tableau)):
                if k != i and tableau[k][pivot_col] != 0:
                    f = tableau[k][pivot_col]
                    tableau[k] = [v - f * p for v, p in zip(tableau[k], tableau[i])]
            basis[i] = pivot_col

    # phase 2: original objective over x+, x-; forbid artificials
    tableau.pop()
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(n):
        obj[j] = c[j]
        obj[n + j] = -c[j]
    tableau.append(obj)
    for i in range(m):
        bj = basis[i]
        if tableau[-1][bj] != 0:
            f = tableau[-1][bj]
            tableau[-1] = [v - f * p for v, p in zip(tableau[-1], tableau[i])]
    # artificial columns must never re-enter
    ncols_ph2 = 2 * n + nslack
    status = _simplex(tableau, basis, ncols_ph2)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] += tableau[i][-1]
        elif basis[i] < 2 * n:
            x[basis[i] - n] -= tableau[i][-1]
    value = -tableau[-1][-1]
    if maximize:
        value = -value
    return LPResult(OPTIMAL, value, x)


def max_slack(
    strict_rows,
    strict_rhs,
    a_eq=None,
    b_eq=None,
    cap: int | Fraction = 1,
    nvars: int | None = None,
) -> tuple[Fraction, list[Fraction] | None]:
    """Maximize d subject to strict_rows.x >= strict_rhs + d (and
    equalities), capping d <= cap so the LP stays bounded.

    Returns (d*, x*) where x* achieves the optimum; the system of strict
    inequalities strict_rows.x > strict_rhs is solvable iff d* > 0.
    With no strict rows at all the answer is (cap, trivial point).
    """
    if nvars is None:
        nvars = 0
        for r in strict_rows:
            nvars = max(nvars, len(r))
        if a_eq:
            for r in a_eq:
                nvars = max(nvars, len(r))
    # variables: x (nvars) then d
    a_ub = []
    b_ub = []
    for row, b in zip(strict_rows, strict_rhs):
        r = [-Fraction(v) for v in row] + [Fraction(0)] * (nvars - len(row))
        r.append(Fraction(1))  # -row.x + d <= -b
        a_ub.append(r)
        b_ub.append(-Fraction(b))
    a_ub.append([Fraction(0)] * nvars + [Fraction(1)])
    b_ub.append(Fraction(cap))
    eqs = None
    erhs = None
    if a_eq:
        eqs = [[Fraction(v) for v in row] + [Fraction(0)] * (nvars - len(row) + 1) for row in a_eq]
        erhs = [Fraction(v) for v in b_eq]
    obj = [Fraction(0)] * nvars + [Fraction(1)]
    res = solve_lp(obj, a_ub, b_ub, eqs, erhs, maximize=True)
    if res.status == INFEASIBLE:
        return Fraction(-1), None
    assert res.status == OPTIMAL
    return res.value, res.x[:nvars]
