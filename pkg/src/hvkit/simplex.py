"""Exact-arithmetic feasibility solver for equality-form linear systems.

Decides whether A x = b has a solution with x >= 0, where A and b are
exact rationals and b >= 0.  Uses the phase-one simplex method on the
artificial-variable problem with Bland's smallest-index rule, which
guarantees termination without any tolerances.

On success returns the feasible x.  On failure returns a dual vector y
with  y . b > 0  and  y . A_j <= 0  for every column j -- a certificate
that no nonnegative solution exists (the caller can re-verify both
inequalities exactly).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InternalCheckError
from .rationals import ONE, ZERO


@dataclass(frozen=True)
class FeasibilityResult:
    solution: tuple[Fraction, ...] | None
    dual: tuple[Fraction, ...] | None

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def solve_feasibility(columns: list[list[Fraction]], rhs: list[Fraction]) -> FeasibilityResult:
    m = len(rhs)
    n = len(columns)
    for j, col in enumerate(columns):
        if len(col) != m:
            raise DomainError(f"column {j} has length {len(col)}, expected {m}")
    if any(b < 0 for b in rhs):
        raise DomainError("right-hand side must be nonnegative")

    # tableau rows: structural columns | artificial identity | rhs
    rows = []
    for i in range(m):
        row = [columns[j][i] for j in range(n)]
        row += [ONE if k == i else ZERO for k in range(m)]
        row.append(rhs[i])
        rows.append(row)
    basis = [n + i for i in range(m)]

    # phase-one objective: minimize the sum of artificials; reduced costs
    # start as the negated column sums over the constraint rows
    width = n + m + 1
    cost = [ZERO] * width
    for row in rows:
        for j in range(width):
            cost[j] -= row[j]
    for k in range(m):
        cost[n + k] = ZERO

    def pivot(pr: int, pc: int) -> None:
        pivot_value = rows[pr][pc]
        rows[pr] = [v / pivot_value for v in rows[pr]]
        for i in range(m):
            if i != pr and rows[i][pc] != 0:
                factor = rows[i][pc]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[pr])]
        if cost[pc] != 0:
            factor = cost[pc]
            for j in range(width):
                cost[j] -= factor * rows[pr][j]
        basis[pr] = pc

    while True:
        entering = next((j for j in range(n + m) if cost[j] < 0), None)
        if entering is None:
            break
        # ratio test; ties broken by smallest basic-variable index (Bland)
        leaving = None
        best = None
        for i in range(m):
            a = rows[i][entering]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            raise InternalCheckError("phase-one objective unbounded; cannot happen")
        pivot(leaving, entering)

    optimum = -cost[-1]
    if optimum == 0:
        solution = [ZERO] * n
        for i, var in enumerate(basis):
            if var < n:
                solution[var] = rows[i][-1]
        return FeasibilityResult(tuple(solution), None)

    # infeasible: multipliers read off the artificial reduced costs
    dual = tuple(ONE - cost[n + k] for k in range(m))
    value = sum((y * b for y, b in zip(dual, rhs)), ZERO)
    if value <= 0:
        raise InternalCheckError("dual certificate does not separate")
    for j in range(n):
        against = sum((y * columns[j][i] for i, y in enumerate(dual)), ZERO)
        if against > 0:
            raise InternalCheckError("dual certificate fails on a column")
    return FeasibilityResult(None, dual)
