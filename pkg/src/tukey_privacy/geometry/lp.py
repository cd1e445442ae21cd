"""
Dense two-phase simplex for the small linear programs used throughout.

Instances have at most a handful of free variables and at most a few
thousand inequality rows, so a dense tableau with Bland's anti-cycling rule
is adequate and keeps the package free of an external solver.
"""

import logging
from collections.abc import Sequence
from typing import Literal

import numpy as np

from .exceptions import GeometryError, Infeasible, Unbounded
from .polytope import Halfspace, geometry_tolerance

logger = logging.getLogger(__name__)

# Hard stop for pathological inputs; Bland's rule itself cannot cycle
MAX_PIVOTS = 50_000


def _pivot(tableau: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    column = tableau[:, col].copy()
    column[row] = 0.0
    tableau -= np.outer(column, tableau[row])


def _run_simplex(tableau: np.ndarray, basis: list[int], n_columns: int, tol: float) -> None:
    """
    Minimize the objective held in the last tableau row, in place.

    Columns at index >= n_columns never enter the basis.

    Raises:
        Unbounded: If an entering column has no positive entry.
    """
    for _ in range(MAX_PIVOTS):
        costs = tableau[-1, :n_columns]
        candidates = np.flatnonzero(costs < -tol)
        if candidates.size == 0:
            return
        col = int(candidates[0])  # Bland: lowest index enters

        column = tableau[:-1, col]
        rows = np.flatnonzero(column > tol)
        if rows.size == 0:
            raise Unbounded("LP objective is unbounded")
        ratios = tableau[rows, -1] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + tol]
        row = int(min(ties, key=lambda r: basis[r]))  # Bland: lowest basic index leaves

        _pivot(tableau, row, col)
        basis[row] = col
    raise GeometryError(f"Simplex did not converge within {MAX_PIVOTS} pivots")


def lp_solve_matrix(
    objective: np.ndarray,
    A: np.ndarray,
    b: np.ndarray,
    sense: Literal["min", "max"] = "min",
) -> tuple[float, np.ndarray]:
    """
    Optimize objective·x subject to A x <= b with x free.

    Args:
        objective: Cost vector of length n.
        A: Constraint matrix of shape (m, n).
        b: Right-hand side of length m.
        sense: "min" or "max".

    Returns:
        (optimal value, optimal point).

    Raises:
        Infeasible: If no x satisfies the constraints.
        Unbounded: If the objective is unbounded in the requested sense.
    """
    tol = geometry_tolerance()
    c = np.asarray(objective, dtype=float)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1)
    if sense not in ("min", "max"):
        raise ValueError(f"Unknown LP sense: {sense}")
    if sense == "max":
        c = -c

    m, n = A.shape
    if m == 0:
        if np.allclose(c, 0.0):
            return 0.0, np.zeros(n)
        raise Unbounded("LP without constraints has an unbounded objective")

    # Columns: x+ (n), x- (n), slack (m), artificial (m), rhs
    n_struct = 2 * n + m
    tableau = np.zeros((m + 1, n_struct + m + 1))
    signs = np.where(b < 0, -1.0, 1.0)
    tableau[:m, :n] = A * signs[:, None]
    tableau[:m, n : 2 * n] = -A * signs[:, None]
    tableau[:m, 2 * n : n_struct] = np.diag(signs)
    tableau[:m, n_struct : n_struct + m] = np.eye(m)
    tableau[:m, -1] = b * signs
    basis = list(range(n_struct, n_struct + m))

    # Phase 1: minimize the sum of artificials
    tableau[-1, :n_struct] = -tableau[:m, :n_struct].sum(axis=0)
    tableau[-1, -1] = -tableau[:m, -1].sum()
    _run_simplex(tableau, basis, n_struct, tol)

    scale = max(1.0, float(np.abs(b).max()))
    if -tableau[-1, -1] > tol * scale * m:
        raise Infeasible("LP constraints are infeasible")

    # Drive remaining artificials out of the basis; drop redundant rows
    keep_rows = []
    for row in range(m):
        if basis[row] >= n_struct:
            entries = np.flatnonzero(np.abs(tableau[row, :n_struct]) > tol)
            if entries.size == 0:
                continue
            _pivot(tableau, row, int(entries[0]))
            basis[row] = int(entries[0])
        keep_rows.append(row)

    body = tableau[keep_rows][:, list(range(n_struct)) + [tableau.shape[1] - 1]]
    basis = [basis[r] for r in keep_rows]

    # Phase 2 on the original objective
    cost = np.concatenate([c, -c, np.zeros(m)])
    phase2 = np.zeros((len(keep_rows) + 1, n_struct + 1))
    phase2[:-1] = body
    phase2[-1, :n_struct] = cost
    for row, col in enumerate(basis):
        phase2[-1] -= cost[col] * phase2[row]
    _run_simplex(phase2, basis, n_struct, tol)

    solution = np.zeros(n_struct)
    for row, col in enumerate(basis):
        solution[col] = phase2[row, -1]
    point = solution[:n] - solution[n : 2 * n]
    value = float(np.asarray(objective, dtype=float) @ point)
    return value, point


def lp_solve(
    objective: Sequence[float] | np.ndarray,
    constraints: Sequence[Halfspace],
    sense: Literal["min", "max"] = "min",
) -> tuple[float, np.ndarray]:
    """
    Optimize a linear objective over an intersection of halfspaces.

    Usage:
        value, point = lp_solve([1.0, 0.0], square.facets, sense="max")
    """
    objective = np.asarray(objective, dtype=float)
    if not constraints:
        return lp_solve_matrix(objective, np.zeros((0, objective.size)), np.zeros(0), sense)
    A = np.vstack([h.normal for h in constraints])
    b = np.array([h.offset for h in constraints])
    return lp_solve_matrix(objective, A, b, sense)
