import itertools
import math

import numpy as np
import pytest

from Core.errors import CapacityError, ModeError, ParameterDomainError, ShapeError
from models import EdgeProb, KCoreConfig, ModelParams
from Recovery.assignment import solve_assignment
from Recovery.graphs import Matching, intersection_graph, min_degree
from Recovery.likelihood import feature_log_likelihood
from Recovery.matching import (
    PermutationEstimate,
    choose_k,
    kcore_estimator,
    kcore_estimator_bruteforce,
    kcore_oracle,
    map_weights,
    mismatched_vertices,
)
from Recovery.model import make_rng, sample_pair


def naive_bruteforce(A, B, k):
    """Every injection of every subset, in lexicographic order, largest first."""
    n = A.shape[0]
    for size in range(n, 0, -1):
        for dom in itertools.combinations(range(n), size):
            for img in itertools.permutations(range(n), size):
                m = Matching(np.array(dom), np.array(img))
                if min_degree(intersection_graph(A, B, m)) >= k:
                    return m.pairs
    return []


# -----------------------------
# choose_k
# -----------------------------
def test_choose_k_dense_term_wins():
    assert choose_k(10**6, 100 / 10**6) == 5


def test_choose_k_sparse_term_wins():
    assert choose_k(10**6, math.e**2 / 10**6) == 3


def test_choose_k_guard_below_e():
    n = 10**6
    expected = math.ceil(math.log(n) / math.log(math.log(n)) ** 2)
    assert choose_k(n, 0.0) == expected
    assert choose_k(n, 1.0 / n) == expected


def test_choose_k_small_n():
    with pytest.raises(ParameterDomainError):
        choose_k(3, 0.5)


# -----------------------------
# exhaustive k-core
# -----------------------------
def test_bruteforce_triangles(complete):
    m = kcore_estimator_bruteforce(complete(3), complete(3), 2)
    assert m.pairs == [(0, 0), (1, 1), (2, 2)]


def test_bruteforce_empty_graphs():
    empty = np.zeros((4, 4), dtype=bool)
    assert kcore_estimator_bruteforce(empty, empty, 1).size == 0


def test_bruteforce_single_edge(adjacency):
    A = adjacency(3, [(0, 1)])
    assert kcore_estimator_bruteforce(A, A, 1).pairs == [(0, 0), (1, 1)]


def test_bruteforce_capacity(complete):
    with pytest.raises(CapacityError):
        kcore_estimator_bruteforce(complete(9), complete(9), 2, limit=8)


def test_bruteforce_agrees_with_naive_enumeration():
    rng = make_rng(5)
    for _ in range(15):
        n = int(rng.integers(2, 6))
        p = EdgeProb.from_p11(float(rng.uniform(0.2, 0.6)), 0.1, 0.1)
        s = sample_pair(ModelParams(n=n, p=p, d=0, rho=0.0), rng)
        k = int(rng.integers(1, 3))
        assert kcore_estimator_bruteforce(s.A, s.B, k).pairs == naive_bruteforce(s.A, s.B, k)


@pytest.mark.slow
def test_bruteforce_is_maximum_over_every_partial_matching():
    rng = make_rng(31)
    for _ in range(100):
        n = int(rng.integers(2, 8))
        p = EdgeProb.from_p11(float(rng.uniform(0.2, 0.7)), 0.1, 0.1)
        s = sample_pair(ModelParams(n=n, p=p, d=0, rho=0.0), rng)
        k = int(rng.integers(1, 4))
        m = kcore_estimator_bruteforce(s.A, s.B, k)
        expected = naive_bruteforce(s.A, s.B, k)
        assert min_degree(intersection_graph(s.A, s.B, m)) >= k
        assert m.size == len(expected)
        assert m.pairs == expected


def test_bruteforce_is_feasible_and_at_least_oracle_size():
    rng = make_rng(12)
    for _ in range(20):
        n = int(rng.integers(3, 8))
        p = EdgeProb.from_p11(float(rng.uniform(0.3, 0.7)), 0.1, 0.1)
        s = sample_pair(ModelParams(n=n, p=p, d=0, rho=0.0), rng)
        k = int(rng.integers(1, 3))
        m = kcore_estimator_bruteforce(s.A, s.B, k)
        assert min_degree(intersection_graph(s.A, s.B, m)) >= k
        assert m.size >= kcore_oracle(s, k).size


# -----------------------------
# oracle k-core
# -----------------------------
def test_oracle_on_complete_graphs():
    s = sample_pair(ModelParams(n=7, p=EdgeProb.from_p11(1.0), d=0, rho=0.0), 2)
    m = kcore_oracle(s, 6)
    assert m.domain.tolist() == list(range(7))
    assert np.array_equal(m.image, s.pi_star)


def test_oracle_triangle_plus_pendant(adjacency, make_sample):
    A = adjacency(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    pi = np.array([3, 1, 0, 2])
    B = np.zeros_like(A)
    B[np.ix_(pi, pi)] = A
    m = kcore_oracle(make_sample(A, B, pi_star=pi), 2)
    assert m.pairs == [(0, 3), (1, 1), (2, 0)]


def test_oracle_on_empty_intersection():
    s = sample_pair(ModelParams(n=6, p=EdgeProb.from_p11(0.0, 0.5, 0.5), d=0, rho=0.0), 1)
    assert kcore_oracle(s, 1).size == 0


def test_oracle_needs_truth(complete, make_sample):
    s = make_sample(complete(4), complete(4)).without_truth()
    with pytest.raises(ModeError):
        kcore_oracle(s, 1)


def test_kcore_estimator_dispatch(complete, make_sample):
    s = make_sample(complete(4), complete(4))
    assert kcore_estimator(s, KCoreConfig(k=3, mode="brute")).size == 4
    assert kcore_estimator(s, KCoreConfig(k=3, mode="oracle")).size == 4


# -----------------------------
# features
# -----------------------------
def test_map_weights_example():
    W = map_weights(np.array([[1.0], [2.0]]), np.array([[2.0], [1.0]]), np.arange(2), np.arange(2))
    assert W.tolist() == [[2.0, 1.0], [4.0, 2.0]]


def test_map_weights_shape_errors():
    with pytest.raises(ShapeError):
        map_weights(np.zeros((3, 2)), np.zeros((3, 3)), np.arange(3), np.arange(3))
    with pytest.raises(ShapeError):
        map_weights(np.zeros((3, 2)), np.zeros((3, 2)), np.arange(3), np.arange(2))


def test_gram_matrix_assignment_is_identity():
    X = make_rng(4).standard_normal((9, 3))
    m = solve_assignment(map_weights(X, X, np.arange(9), np.arange(9)))
    assert m.image.tolist() == list(range(9))


def test_inner_products_track_the_log_likelihood():
    rho = 0.6
    s = sample_pair(ModelParams(n=12, p=EdgeProb.from_p11(0.0), d=4, rho=rho), 17)
    W = map_weights(s.X, s.Y, np.arange(12), np.arange(12))
    rng = make_rng(2)
    for _ in range(10):
        pi1, pi2 = rng.permutation(12), rng.permutation(12)
        delta_ll = feature_log_likelihood(s.X, s.Y, pi1, rho) - feature_log_likelihood(s.X, s.Y, pi2, rho)
        delta_w = W[np.arange(12), pi1].sum() - W[np.arange(12), pi2].sum()
        assert delta_ll == pytest.approx(rho / (1 - rho**2) * delta_w, abs=1e-8)


# -----------------------------
# estimates
# -----------------------------
def test_permutation_estimate_validation():
    est = PermutationEstimate(np.array([1, 0, 2]), ("kcore", "kcore", "feature"))
    assert est.kcore_size == 2
    assert est.is_exact(np.array([1, 0, 2]))
    with pytest.raises(ShapeError):
        PermutationEstimate(np.array([0, 0, 2]), ("kcore",) * 3)
    with pytest.raises(ShapeError):
        PermutationEstimate(np.array([0, 1]), ("kcore",))


def test_mismatched_vertices():
    m = Matching.from_pairs([(0, 1), (1, 0), (2, 2)])
    assert mismatched_vertices(m, np.arange(3)).tolist() == [0, 1]
