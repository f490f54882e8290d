"""Dense two-phase simplex for small linear programs.

Maximises c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0.  Pivoting
uses Bland's rule throughout, so the solver is deterministic and cannot
cycle; problems here have at most a few hundred variables, where a dense
tableau is both fast and simple to audit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LpError

FEASIBILITY_TOL = 1e-9


@dataclass(frozen=True)
class LpResult:
    status: str  # optimal | infeasible | unbounded
    objective: float
    x: np.ndarray


def maximize(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None, tol: float = FEASIBILITY_TOL) -> LpResult:
    """Solve max c.x, A_ub x <= b_ub, A_eq x = b_eq, x >= 0."""
    c = np.asarray(c, dtype=float)
    nx = c.shape[0]
    rows = []
    senses = []  # +1: row has a <= slack, 0: equality
    rhs = []
    if a_ub is not None:
        a_ub = np.atleast_2d(np.asarray(a_ub, dtype=float))
        for row, b in zip(a_ub, np.asarray(b_ub, dtype=float).ravel()):
            rows.append(row)
            senses.append(+1)
            rhs.append(b)
    if a_eq is not None:
        a_eq = np.atleast_2d(np.asarray(a_eq, dtype=float))
        for row, b in zip(a_eq, np.asarray(b_eq, dtype=float).ravel()):
            rows.append(row)
            senses.append(0)
            rhs.append(b)
    m = len(rows)
    if m == 0:
        raise LpError("no constraints given")

    n_slack = sum(1 for s in senses if s != 0)
    # Columns: x's, slacks, artificials, rhs.  Every row gets an artificial;
    # rows whose slack can start basic simply never activate theirs.
    n_art = m
    ncols = nx + n_slack + n_art
    table = np.zeros((m + 1, ncols + 1))
    basis = [0] * m
    slack_idx = 0
    needs_art = []
    for i, (row, sense, b) in enumerate(zip(rows, senses, rhs)):
        sign = 1.0 if b >= 0 else -1.0
        table[i, :nx] = sign * row
        if sense != 0:
            table[i, nx + slack_idx] = sign
            slack_col = nx + slack_idx
            slack_idx += 1
        table[i, -1] = sign * b
        if sense != 0 and sign > 0:
            basis[i] = slack_col
            needs_art.append(False)
        else:
            art_col = nx + n_slack + i
            table[i, art_col] = 1.0
            basis[i] = art_col
            needs_art.append(True)

    art_cols = {nx + n_slack + i for i, need in enumerate(needs_art) if need}
    if art_cols:
        # Phase 1: minimise the sum of active artificials.
        for col in art_cols:
            table[-1, col] = 1.0
        for i, need in enumerate(needs_art):
            if need:
                table[-1, :] -= table[i, :]
        status = _run(table, basis, tol, blocked=frozenset())
        if status != "optimal":
            raise LpError(f"phase-1 simplex returned {status}")
        if table[-1, -1] < -tol:
            return LpResult("infeasible", float("nan"), np.full(nx, np.nan))
        _evict_artificials(table, basis, art_cols, nx + n_slack, tol)

    # Phase 2: minimise -c.x over the real columns.
    table[-1, :] = 0.0
    table[-1, :nx] = -c
    for i, col in enumerate(basis):
        if col in art_cols:
            continue
        coeff = table[-1, col]
        if coeff != 0.0:
            table[-1, :] -= coeff * table[i, :]
    status = _run(table, basis, tol, blocked=frozenset(art_cols))
    if status != "optimal":
        return LpResult(status, float("nan"), np.full(nx, np.nan))

    x = np.zeros(nx)
    for i, col in enumerate(basis):
        if col < nx:
            x[col] = table[i, -1]
    return LpResult("optimal", float(c @ x), x)


def _run(table, basis, tol, blocked) -> str:
    """Bland-rule simplex iterations on a tableau whose last row minimises."""
    m = table.shape[0] - 1
    ncols = table.shape[1] - 1
    while True:
        entering = -1
        for j in range(ncols):
            if j in blocked:
                continue
            if table[-1, j] < -tol:
                entering = j
                break
        if entering < 0:
            return "optimal"
        leaving = -1
        best_ratio = None
        for i in range(m):
            a = table[i, entering]
            if a > tol:
                ratio = table[i, -1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio - tol
                    or (abs(ratio - best_ratio) <= tol and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            return "unbounded"
        _pivot(table, basis, leaving, entering)


def _pivot(table, basis, row, col):
    table[row, :] /= table[row, col]
    for i in range(table.shape[0]):
        if i != row and table[i, col] != 0.0:
            table[i, :] -= table[i, col] * table[row, :]
    basis[row] = col


def _evict_artificials(table, basis, art_cols, n_real, tol):
    """Pivot zero-level artificials out of the basis; blank redundant rows."""
    for i in range(len(basis)):
        if basis[i] not in art_cols:
            continue
        pivot_col = -1
        for j in range(n_real):
            if abs(table[i, j]) > tol:
                pivot_col = j
                break
        if pivot_col >= 0:
            _pivot(table, basis, i, pivot_col)
        else:
            # Redundant constraint: the row is (numerically) all zeros.
            table[i, :] = 0.0
            table[i, basis[i]] = 1.0
