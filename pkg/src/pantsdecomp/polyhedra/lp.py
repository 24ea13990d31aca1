"""Exact linear programming by a two-phase tableau simplex with Bland's rule."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
OPTIMAL = "optimal"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    point: tuple | None = None


def _reduce(row: list) -> list:
    g = gcd(*row)
    return [x // g for x in row] if g > 1 else row


def _pivot(tab, basis, r, c):
    """Fraction-free pivot: rows are integer vectors up to a positive scale."""
    row = tab[r]
    if row[c] < 0:
        row = [-x for x in row]
    row = _reduce(row)
    tab[r] = row
    p = row[c]
    for i, other in enumerate(tab):
        if i != r:
            f = other[c]
            if f:
                tab[i] = _reduce([p * a - f * b for a, b in zip(other, row)])
    basis[r] = c


def _run(tab, basis, allowed) -> bool:
    """Maximise the objective stored in the last row; False if unbounded."""
    while True:
        obj = tab[-1]
        # reduced costs are stored negated: entering column has obj[c] < 0
        enter = next((c for c in allowed if obj[c] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(len(tab) - 1):
            a = tab[i][enter]
            if a > 0:
                if best is None:
                    best = i
                    continue
                # compare rhs_i / a with rhs_best / a_best
                lhs = tab[i][-1] * tab[best][enter]
                rhs = tab[best][-1] * a
                if lhs < rhs or (lhs == rhs and basis[i] < basis[best]):
                    best = i
        if best is None:
            return False
        _pivot(tab, basis, best, enter)


def _integer_row(values: Sequence) -> list[int]:
    fr = [Fraction(v) for v in values]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in fr]


def linprog(
    c: Sequence,
    a_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    maximize: bool = True,
) -> LPResult:
    """Optimise ``c·x`` over ``{a_ub x <= b_ub, a_eq x = b_eq}`` with free ``x``."""
    n = len(c)
    rows = [(list(a) + [b], True) for a, b in zip(a_ub, b_ub)]
    rows += [(list(a) + [b], False) for a, b in zip(a_eq, b_eq)]
    m = len(rows)
    n_slack = sum(1 for r in rows if r[1])
    width = 2 * n + n_slack + m + 1  # x+, x-, slacks, artificials, rhs
    tab = []
    basis = []
    s = 0
    for i, (vals, is_ub) in enumerate(rows):
        ints = _integer_row(vals)
        row = [0] * width
        for j in range(n):
            row[j] = ints[j]
            row[n + j] = -ints[j]
        if is_ub:
            row[2 * n + s] = 1
            s += 1
        row[-1] = ints[-1]
        if row[-1] < 0:
            row = [-x for x in row]
        row[2 * n + n_slack + i] = 1
        tab.append(row)
        basis.append(2 * n + n_slack + i)
    art = range(2 * n + n_slack, 2 * n + n_slack + m)
    # phase one: maximise -sum(artificials)
    obj = [0] * width
    for i in range(m):
        obj = [o - x for o, x in zip(obj, tab[i])]
    for j in art:
        obj[j] = 0
    tab.append(obj)
    _run(tab, basis, range(2 * n + n_slack + m))
    if tab[-1][-1] != 0:
        return LPResult(INFEASIBLE)
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] in art:
            col = next((j for j in range(2 * n + n_slack) if tab[i][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, i, col)
    keep = [i for i in range(m) if basis[i] not in art]
    tab = [tab[i] for i in keep]
    basis = [basis[i] for i in keep]
    sign = 1 if maximize else -1
    cints = _integer_row(list(c)) if n else []
    obj = [0] * width
    for j, v in enumerate(cints):
        obj[j] = -sign * v
        obj[n + j] = sign * v
    for i, b in enumerate(basis):
        f = obj[b]
        if f:
            p = tab[i][b]
            obj = _reduce([p * o - f * x for o, x in zip(obj, tab[i])])
    tab.append(obj)
    if not _run(tab, basis, range(2 * n + n_slack)):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * (2 * n)
    for i, b in enumerate(basis):
        if b < 2 * n:
            x[b] = Fraction(tab[i][-1], tab[i][b])
    point = tuple(x[j] - x[n + j] for j in range(n))
    value = sum((Fraction(v) * p for v, p in zip(c, point)), Fraction(0))
    return LPResult(OPTIMAL, value, point)


def feasible_point(a_ub, b_ub, a_eq=(), b_eq=(), n: int | None = None):
    if n is None:
        n = len(a_ub[0]) if a_ub else len(a_eq[0])
    res = linprog([0] * n, a_ub, b_ub, a_eq, b_eq)
    return None if res.status == INFEASIBLE else res.point


def max_slack(a_ub, b_ub, a_eq=(), b_eq=(), strict: Sequence[bool] | None = None, n: int | None = None):
    """Largest ``s <= 1`` such that the ``strict`` inequalities hold with slack ``s``.

    A positive result means the system with those inequalities made
    strict is feasible; returns ``None`` when even ``s = 0`` fails.
    """
    if n is None:
        n = len(a_ub[0]) if a_ub else len(a_eq[0])
    if strict is None:
        strict = [True] * len(a_ub)
    rows = [list(a) + [1 if st else 0] for a, st in zip(a_ub, strict)]
    rows.append([0] * n + [1])
    rhs = list(b_ub) + [1]
    eqs = [list(a) + [0] for a in a_eq]
    res = linprog([0] * n + [1], rows, rhs, eqs, list(b_eq))
    if res.status != OPTIMAL or res.value < 0:
        return None
    return res.value
