"""Exact-rational simplex for small dense linear programs.

Maximizes c.x subject to A x <= b over free (sign-unrestricted) variables,
entirely in Fraction arithmetic.  Free variables are split into positive
parts, slacks give a starting basis (b must be nonnegative), and Bland's
rule makes the pivoting immune to degeneracy cycling, so termination and the
reported optimum are exact facts rather than float artifacts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class UnboundedError(Exception):
    """The objective is unbounded over the feasible region."""


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    solution: tuple[Fraction, ...]
    tight: tuple[int, ...]  # constraint rows satisfied with equality


def solve_lp(
    objective: Sequence[Fraction],
    constraints: Sequence[Sequence[Fraction]],
    bounds: Sequence[Fraction],
) -> LPResult:
    nvars = len(objective)
    m = len(constraints)
    if len(bounds) != m or any(len(row) != nvars for row in constraints):
        raise ValueError("inconsistent LP dimensions")
    if any(b < 0 for b in bounds):
        raise ValueError("bounds must be nonnegative (slack basis start)")

    cols = 2 * nvars + m
    tableau = []
    for i in range(m):
        row = [Fraction(a) for a in constraints[i]]
        row += [-a for a in row[:nvars]]
        row += [Fraction(int(j == i)) for j in range(m)]
        row.append(Fraction(bounds[i]))
        tableau.append(row)
    cost = [-Fraction(c) for c in objective]
    cost += [Fraction(c) for c in objective]
    cost += [Fraction(0)] * m
    cost.append(Fraction(0))
    basis = [2 * nvars + i for i in range(m)]

    while True:
        entering = next((j for j in range(cols) if cost[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best_ratio = None
        for i in range(m):
            coeff = tableau[i][entering]
            if coeff > 0:
                ratio = tableau[i][-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving is None:
            raise UnboundedError("no blocking constraint for the entering column")
        pivot = tableau[leaving][entering]
        tableau[leaving] = [v / pivot for v in tableau[leaving]]
        for i in range(m):
            if i != leaving and tableau[i][entering]:
                factor = tableau[i][entering]
                tableau[i] = [
                    v - factor * p for v, p in zip(tableau[i], tableau[leaving])
                ]
        if cost[entering]:
            factor = cost[entering]
            cost = [v - factor * p for v, p in zip(cost, tableau[leaving])]
        basis[leaving] = entering

    assignment = [Fraction(0)] * cols
    for i, var in enumerate(basis):
        assignment[var] = tableau[i][-1]
    solution = tuple(
        assignment[j] - assignment[nvars + j] for j in range(nvars)
    )
    value = sum((c * x for c, x in zip(objective, solution)), Fraction(0))
    tight = tuple(
        i
        for i, (row, b) in enumerate(zip(constraints, bounds))
        if sum((a * x for a, x in zip(row, solution)), Fraction(0)) == b
    )
    return LPResult(value, solution, tight)
