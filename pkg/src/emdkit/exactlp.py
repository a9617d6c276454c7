"""A small dense exact-rational LP solver (two-phase simplex, Bland's rule).

Solves  min c.x  subject to  A x = b,  x >= 0,  entirely over Fractions.
Bland's rule (smallest eligible index for both the entering and the leaving
variable) rules out cycling, and exact arithmetic makes degeneracy harmless,
so no tolerances appear anywhere.  Intended for desk-scale oracle work, not
production-size programs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import Infeasible, Unbounded

__all__ = ["solve_min"]


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tableau[row][col]
    inv = 1 / piv
    tableau[row] = [v * inv for v in tableau[row]]
    pivot_row = tableau[row]
    for r, other in enumerate(tableau):
        if r == row:
            continue
        factor = other[col]
        if factor:
            tableau[r] = [v - factor * p for v, p in zip(other, pivot_row)]
    basis[row] = col


def _run(tableau: list[list[Fraction]], basis: list[int], allowed: int) -> None:
    """Optimize in place; the last tableau row holds reduced costs.

    Only columns with index < ``allowed`` may enter the basis (used to keep
    artificial variables out during phase 2).
    """
    m = len(tableau) - 1
    while True:
        obj = tableau[m]  # _pivot rebinds rows, so re-read each round
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return
        row = None
        best: Fraction | None = None
        for r in range(m):
            a = tableau[r][col]
            if a > 0:
                ratio = tableau[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[row]):
                    best = ratio
                    row = r
        if row is None:
            raise Unbounded("reduced cost negative with no blocking row")
        _pivot(tableau, basis, row, col)


def _price_out(tableau: list[list[Fraction]], basis: list[int], cost: list[Fraction]) -> None:
    """Install ``cost`` as the objective row, reduced against the current basis."""
    m = len(tableau) - 1
    width = len(tableau[0])
    obj = list(cost) + [Fraction(0)] * (width - len(cost))
    for r in range(m):
        factor = obj[basis[r]]
        if factor:
            obj = [v - factor * p for v, p in zip(obj, tableau[r])]
    tableau[m] = obj


def solve_min(
    a: Sequence[Sequence[Fraction | int]],
    b: Sequence[Fraction | int],
    c: Sequence[Fraction | int],
) -> tuple[Fraction, list[Fraction]]:
    """Return (optimal value, an optimal vertex) of min c.x, A x = b, x >= 0."""
    m = len(a)
    nv = len(c)
    rows = [[Fraction(v) for v in row] for row in a]
    rhs = [Fraction(v) for v in b]
    for r in range(m):
        if rhs[r] < 0:
            rhs[r] = -rhs[r]
            rows[r] = [-v for v in rows[r]]

    # Tableau columns: nv structural, m artificial, rhs.  Artificials form
    # the starting basis.
    tableau: list[list[Fraction]] = []
    for r in range(m):
        art = [Fraction(0)] * m
        art[r] = Fraction(1)
        tableau.append(rows[r] + art + [rhs[r]])
    basis = [nv + r for r in range(m)]
    tableau.append([Fraction(0)] * (nv + m + 1))

    phase1 = [Fraction(0)] * nv + [Fraction(1)] * m
    _price_out(tableau, basis, phase1)
    _run(tableau, basis, nv + m)
    if tableau[-1][-1] != 0:
        raise Infeasible("equality constraints admit no nonnegative solution")

    # Drive leftover artificials out of the (degenerate) basis, dropping any
    # row that turns out to be a redundant constraint.
    for r in range(m - 1, -1, -1):
        if basis[r] < nv:
            continue
        col = next((j for j in range(nv) if tableau[r][j] != 0), None)
        if col is None:
            del tableau[r]
            del basis[r]
        else:
            _pivot(tableau, basis, r, col)

    _price_out(tableau, basis, [Fraction(v) for v in c])
    _run(tableau, basis, nv)

    solution = [Fraction(0)] * nv
    for r, var in enumerate(basis):
        solution[var] = tableau[r][-1]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, solution)), start=Fraction(0))
    return value, solution
