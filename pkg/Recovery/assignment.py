# Recovery/assignment.py
"""
Exact maximum-weight assignment with a deterministic tie-break.

scipy's `linear_sum_assignment` gives one optimum. Among all optima we return
the lexicographically smallest assignment vector: dual potentials are
recovered from the optimum, every optimal assignment is a perfect matching of
the tight (zero reduced cost) edges, and rows are fixed in order to the
smallest tight column that still leaves a perfect matching.
"""
from __future__ import annotations

from collections import deque
from typing import Dict, Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

from Core.config import ASSIGNMENT_TOL, get_logger
from Core.errors import AssignmentInputError
from Recovery.graphs import Matching

logger = get_logger(__name__)


def _dual_slack(W: np.ndarray, sigma: np.ndarray, tol: float) -> np.ndarray:
    """Reduced costs u_i + v_j - W_ij for duals certifying the optimum `sigma`."""
    n = W.shape[0]
    owner = np.empty(n, dtype=np.int64)
    owner[sigma] = np.arange(n)
    Wo = W[owner]
    # exchange[a, b]: cost of handing column b's row over to column a
    exchange = (np.diag(Wo)[:, None] - Wo).T
    v = np.zeros(n)
    for _ in range(n + 1):
        relaxed = (v[:, None] + exchange).min(axis=0)
        improved = relaxed < v - tol
        if not improved.any():
            break
        v = np.where(improved, relaxed, v)
    u = W[np.arange(n), sigma] - v[sigma]
    return u[:, None] + v[None, :] - W


def _reroute(
    tight: np.ndarray,
    sigma: np.ndarray,
    owner: np.ndarray,
    start_row: int,
    target_col: int,
    blocked_rows: np.ndarray,
    blocked_cols: np.ndarray,
) -> Optional[Dict[int, int]]:
    """Alternating path moving `start_row` off its column and ending on `target_col`."""
    parent: Dict[int, tuple] = {start_row: (-1, -1)}
    queue = deque([start_row])
    while queue:
        row = queue.popleft()
        for col in np.flatnonzero(tight[row] & ~blocked_cols):
            col = int(col)
            if col == sigma[row]:
                continue
            if col == target_col:
                moves = {row: col}
                while parent[row][0] != -1:
                    prev_row, prev_col = parent[row]
                    moves[prev_row] = prev_col
                    row = prev_row
                return moves
            nxt = int(owner[col])
            if nxt in parent or blocked_rows[nxt]:
                continue
            parent[nxt] = (row, col)
            queue.append(nxt)
    return None


def _lexicographic_optimum(W: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    n = W.shape[0]
    rows = np.arange(n)
    scale = max(1.0, float(np.abs(W).max()))
    best = float(W[rows, sigma].sum())
    # rounding noise of an n-term sum; anything below this is a true tie
    exact_tol = 4.0 * n * scale * np.finfo(np.float64).eps
    for tol in (ASSIGNMENT_TOL * scale, exact_tol):
        tight = _dual_slack(W, sigma, tol) <= tol
        tight[rows, sigma] = True
        if int(tight.sum()) == n:
            return sigma
        candidate = _smallest_tight_matching(tight, sigma)
        if float(W[rows, candidate].sum()) >= best - exact_tol:
            return candidate
        logger.debug({"event": "assignment_tie_rejected", "tol": tol, "n": n})
    return sigma


def _smallest_tight_matching(tight: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    n = tight.shape[0]
    logger.debug({"event": "assignment_ties", "tight_edges": int(tight.sum()), "n": n})
    sigma = sigma.copy()
    owner = np.empty(n, dtype=np.int64)
    owner[sigma] = np.arange(n)
    fixed_rows = np.zeros(n, dtype=bool)
    fixed_cols = np.zeros(n, dtype=bool)
    for i in range(n):
        for j in np.flatnonzero(tight[i] & ~fixed_cols):
            j = int(j)
            if j == sigma[i]:
                break
            blocked_rows = fixed_rows.copy()
            blocked_rows[i] = True
            blocked_cols = fixed_cols.copy()
            blocked_cols[j] = True
            moves = _reroute(tight, sigma, owner, int(owner[j]), int(sigma[i]), blocked_rows, blocked_cols)
            if moves is None:
                continue
            moves[i] = j
            for row, col in moves.items():
                sigma[row] = col
                owner[col] = row
            break
        fixed_rows[i] = True
        fixed_cols[sigma[i]] = True
    return sigma


def solve_assignment(W: np.ndarray) -> Matching:
    """Bijection sigma maximizing sum_i W[i, sigma(i)]; ties go to the smallest sigma vector."""
    W = np.asarray(W, dtype=np.float64)
    if W.ndim != 2 or W.shape[0] != W.shape[1]:
        raise AssignmentInputError(f"weight matrix must be square, got shape {W.shape}")
    if not np.all(np.isfinite(W)):
        raise AssignmentInputError("weight matrix has non-finite entries")
    n = W.shape[0]
    if n == 0:
        return Matching.empty()
    rows, cols = linear_sum_assignment(W, maximize=True)
    sigma = np.empty(n, dtype=np.int64)
    sigma[rows] = cols
    sigma = _lexicographic_optimum(W, sigma)
    return Matching(np.arange(n), sigma)


def assignment_value(W: np.ndarray, m: Matching) -> float:
    return float(np.asarray(W)[m.domain, m.image].sum())
