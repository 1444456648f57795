import itertools

import numpy as np
import pytest

from Core.errors import AssignmentInputError
from Recovery.assignment import assignment_value, solve_assignment


def exhaustive(W):
    """(best value, lexicographically smallest optimal assignment)."""
    n = W.shape[0]
    best, arg = -np.inf, None
    for perm in itertools.permutations(range(n)):
        value = W[np.arange(n), perm].sum()
        if value > best:
            best, arg = value, list(perm)
    return best, arg


def test_identity_weights():
    m = solve_assignment(np.eye(5))
    assert m.image.tolist() == [0, 1, 2, 3, 4]
    assert assignment_value(np.eye(5), m) == 5


def test_two_by_two_prefers_swap():
    W = np.array([[2.0, 1.0], [4.0, 2.0]])
    m = solve_assignment(W)
    assert m.image.tolist() == [1, 0]
    assert assignment_value(W, m) == 5


def test_empty_matrix():
    assert solve_assignment(np.zeros((0, 0))).size == 0


@pytest.mark.parametrize("n", [7, 8])
def test_objective_matches_exhaustive_search(n):
    rng = np.random.default_rng(n)
    perms = np.array(list(itertools.permutations(range(n))))
    rows = np.arange(n)
    for _ in range(100):
        W = rng.integers(-50, 51, size=(n, n)).astype(float)
        best = W[rows, perms].sum(axis=1).max()
        assert assignment_value(W, solve_assignment(W)) == best


def test_ties_go_to_smallest_assignment_vector():
    W = np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    assert solve_assignment(W).image.tolist() == [1, 2, 0]
    assert solve_assignment(np.ones((4, 4))).image.tolist() == [0, 1, 2, 3]


def test_tie_break_against_exhaustive_search():
    rng = np.random.default_rng(3)
    for _ in range(60):
        n = int(rng.integers(2, 7))
        W = rng.integers(0, 3, size=(n, n)).astype(float)
        best, arg = exhaustive(W)
        m = solve_assignment(W)
        assert assignment_value(W, m) == best
        assert m.image.tolist() == arg


def test_duplicated_columns_tie():
    W = np.array([[3.0, 3.0, 0.0], [1.0, 1.0, 5.0], [2.0, 2.0, 0.0]])
    assert solve_assignment(W).image.tolist() == [0, 2, 1]


def test_large_weights_with_a_small_gap_are_not_a_tie():
    W = np.array([[1000.0, 1000.0 + 5e-7], [0.0, 0.0]])
    assert solve_assignment(W).image.tolist() == [1, 0]


def test_near_ties_resolve_to_the_true_optimum():
    rng = np.random.default_rng(21)
    for _ in range(40):
        n = int(rng.integers(2, 7))
        W = 1000.0 * rng.integers(0, 3, size=(n, n)) + rng.uniform(0.0, 1e-6, size=(n, n))
        _, arg = exhaustive(W)
        assert solve_assignment(W).image.tolist() == arg


def test_argmax_invariant_under_scaling_and_shifts():
    rng = np.random.default_rng(8)
    for _ in range(30):
        W = rng.integers(0, 4, size=(5, 5)).astype(float)
        base = solve_assignment(W).image.tolist()
        assert solve_assignment(3.0 * W).image.tolist() == base
        shifted = W.copy()
        shifted[2] += 7.0
        shifted[:, 4] -= 2.0
        assert solve_assignment(shifted).image.tolist() == base


def test_rejects_non_square():
    with pytest.raises(AssignmentInputError):
        solve_assignment(np.zeros((2, 3)))


def test_rejects_non_finite():
    with pytest.raises(AssignmentInputError):
        solve_assignment(np.array([[1.0, np.nan], [0.0, 1.0]]))
