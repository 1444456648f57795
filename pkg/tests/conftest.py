# tests/conftest.py
from __future__ import annotations

from typing import Iterable, Optional, Tuple

import numpy as np
import pytest

from Recovery.model import GraphPairSample


def _adjacency(n: int, edges: Iterable[Tuple[int, int]]) -> np.ndarray:
    adj = np.zeros((n, n), dtype=bool)
    for i, j in edges:
        adj[i, j] = adj[j, i] = True
    return adj


@pytest.fixture
def adjacency():
    """Build a symmetric boolean adjacency matrix from 0-based edges."""
    return _adjacency


@pytest.fixture
def complete():
    def build(n: int) -> np.ndarray:
        return ~np.eye(n, dtype=bool)

    return build


@pytest.fixture
def make_sample():
    """GraphPairSample from hand-built parts; features default to d = 0."""

    def build(
        A: np.ndarray,
        B: np.ndarray,
        X: Optional[np.ndarray] = None,
        Y: Optional[np.ndarray] = None,
        pi_star: Optional[np.ndarray] = None,
    ) -> GraphPairSample:
        n = A.shape[0]
        X = np.zeros((n, 0)) if X is None else np.asarray(X, dtype=float)
        Y = X.copy() if Y is None else np.asarray(Y, dtype=float)
        pi = np.arange(n) if pi_star is None else np.asarray(pi_star)
        return GraphPairSample(A, B, X, Y, pi).validate()

    return build
