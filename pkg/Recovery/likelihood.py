# Recovery/likelihood.py
"""
Posterior statistics of a candidate permutation: pair counts mu_ab, the log
posterior ratio, the set of vertices isolated under a permutation, the
scrambled family around the ground truth, and the mismatch-degree statistic.

Posterior values are only ever reported as log-differences; the
normalization constant depending on (A, B) is never computed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import multivariate_normal

from Core.errors import UndefinedRatioError
from models import EdgeProb
from Recovery.graphs import Matching, intersection_graph
from Recovery.model import SeedLike, make_rng


@dataclass(frozen=True)
class PairCounts:
    mu11: int
    mu10: int
    mu01: int
    mu00: int

    @property
    def total(self) -> int:
        return self.mu11 + self.mu10 + self.mu01 + self.mu00


def _relabeled(B: np.ndarray, pi: np.ndarray) -> np.ndarray:
    """Matrix with entry (i, j) = B[pi(i), pi(j)]."""
    pi = np.asarray(pi, dtype=np.int64)
    return np.asarray(B, dtype=bool)[np.ix_(pi, pi)]


def pair_counts(A: np.ndarray, B: np.ndarray, pi: np.ndarray) -> PairCounts:
    n = A.shape[0]
    iu = np.triu_indices(n, k=1)
    a = np.asarray(A, dtype=bool)[iu]
    b = _relabeled(B, pi)[iu]
    mu11 = int(np.count_nonzero(a & b))
    mu10 = int(np.count_nonzero(a & ~b))
    mu01 = int(np.count_nonzero(~a & b))
    return PairCounts(mu11=mu11, mu10=mu10, mu01=mu01, mu00=int(a.size) - mu11 - mu10 - mu01)


def log_posterior_ratio(counts1: PairCounts, counts2: PairCounts, p: EdgeProb) -> float:
    """log P(pi1 | A, B) - log P(pi2 | A, B) under a uniform prior on permutations."""
    if min(p.as_tuple()) <= 0.0:
        raise UndefinedRatioError(
            "posterior ratio needs p11, p10, p01, p00 > 0; "
            "deterministic edge regimes have to be handled by the caller"
        )
    log_odds = math.log(p.p00) + math.log(p.p11) - math.log(p.p10) - math.log(p.p01)
    return (counts1.mu11 - counts2.mu11) * log_odds


def edge_log_likelihood(A: np.ndarray, B: np.ndarray, pi: np.ndarray, p: EdgeProb) -> float:
    """Sum over unordered pairs of log p_{A_ij, B_pi(i)pi(j)}, evaluated pair by pair."""
    n = A.shape[0]
    iu = np.triu_indices(n, k=1)
    a = np.asarray(A, dtype=np.int64)[iu]
    b = _relabeled(B, pi).astype(np.int64)[iu]
    with np.errstate(divide="ignore"):
        table = np.log(np.array([[p.p00, p.p01], [p.p10, p.p11]]))
    return float(table[a, b].sum())


def feature_log_likelihood(X: np.ndarray, Y: np.ndarray, pi: np.ndarray, rho: float) -> float:
    """Joint Gaussian log density of every coordinate pair (x_i[t], y_pi(i)[t])."""
    pi = np.asarray(pi, dtype=np.int64)
    pairs = np.stack([np.asarray(X).ravel(), np.asarray(Y)[pi].ravel()], axis=1)
    law = multivariate_normal(mean=[0.0, 0.0], cov=[[1.0, rho], [rho, 1.0]])
    return float(np.sum(law.logpdf(pairs)))


def h_set(A: np.ndarray, B: np.ndarray, pi: np.ndarray) -> np.ndarray:
    """Vertices with no common edge under pi: A_ij B_pi(i)pi(j) = 0 for every j."""
    common = np.asarray(A, dtype=bool) & _relabeled(B, pi)
    return np.flatnonzero(~common.any(axis=1)).astype(np.int64)


def sample_t_star(pi_star: np.ndarray, h_star: np.ndarray, seed: SeedLike) -> np.ndarray:
    """Agree with pi_star off h_star; on h_star use pi_star composed with a uniform scramble."""
    rng = make_rng(seed)
    pi_star = np.asarray(pi_star, dtype=np.int64)
    h_star = np.sort(np.asarray(h_star, dtype=np.int64))
    pi = pi_star.copy()
    if h_star.size > 1:
        scramble = rng.permutation(h_star.size)
        pi[h_star] = pi_star[h_star[scramble]]
    return pi


def mismatch_count(m: Matching, pi_star: np.ndarray) -> int:
    return int(np.count_nonzero(m.image != np.asarray(pi_star)[m.domain]))


def mismatch_degree_sum(A: np.ndarray, B: np.ndarray, m: Matching, pi_star: np.ndarray) -> int:
    """Intersection-graph degrees summed over the mismatched vertices (mu(i) != pi_star(i))."""
    degrees = intersection_graph(A, B, m).degrees
    wrong = m.image != np.asarray(pi_star)[m.domain]
    return int(degrees[wrong].sum())


def is_weak_kcore(f_value: int, k: int, mismatches: int) -> bool:
    return f_value >= k * mismatches


def is_pi_star_maximal(m: Matching, pi_star: np.ndarray, n: int) -> bool:
    """Every i is matched, or its true partner pi_star(i) is already used as an image."""
    in_domain = np.zeros(n, dtype=bool)
    in_domain[m.domain] = True
    in_image = np.zeros(n, dtype=bool)
    in_image[m.image] = True
    return bool(np.all(in_domain | in_image[np.asarray(pi_star)]))


def in_error_class(m: Matching, pi_star: np.ndarray, n: int, errors: int) -> bool:
    """pi_star-maximal with exactly `errors` mismatches."""
    return is_pi_star_maximal(m, pi_star, n) and mismatch_count(m, pi_star) == errors
