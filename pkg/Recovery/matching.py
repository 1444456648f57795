# Recovery/matching.py
"""
Estimators: the exhaustive k-core estimator, the ground-truth-aided k-core
(theory-validation surrogate), inner-product MAP weights and the choice of k.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from Core import constants
from Core.config import BRUTE_FORCE_LIMIT, get_logger
from Core.errors import CapacityError, ModeError, ParameterDomainError, ShapeError
from models import KCoreConfig
from Recovery.assignment import solve_assignment
from Recovery.graphs import Matching, intersection_graph, kcore_peel
from Recovery.model import GraphPairSample

logger = get_logger(__name__)

# permutations scored per vectorized batch in the exhaustive search
_BATCH = 20_000

__all__ = [
    "PermutationEstimate",
    "choose_k",
    "kcore_estimator",
    "kcore_estimator_bruteforce",
    "kcore_oracle",
    "map_weights",
    "mismatched_vertices",
    "solve_assignment",
]


@dataclass(frozen=True)
class PermutationEstimate:
    """Full bijection pi_hat with a per-vertex tag saying which stage matched it."""

    pi_hat: np.ndarray
    provenance: Tuple[str, ...]

    def __post_init__(self) -> None:
        pi_hat = np.asarray(self.pi_hat, dtype=np.int64)
        if not np.array_equal(np.sort(pi_hat), np.arange(pi_hat.size)):
            raise ShapeError("pi_hat is not a bijection on [n]")
        if len(self.provenance) != pi_hat.size:
            raise ShapeError("provenance must tag every vertex")
        pi_hat.setflags(write=False)
        object.__setattr__(self, "pi_hat", pi_hat)
        object.__setattr__(self, "provenance", tuple(self.provenance))

    @property
    def kcore_size(self) -> int:
        return sum(tag == constants.PROVENANCE_KCORE for tag in self.provenance)

    def is_exact(self, pi_star: np.ndarray) -> bool:
        return bool(np.array_equal(self.pi_hat, np.asarray(pi_star)))


def choose_k(n: int, p11: float) -> int:
    """ceil(max(np11 / (log np11)^2, log n / (log log n)^2)); the first term is 0 for np11 <= e."""
    if n <= 3:
        raise ParameterDomainError(f"choose_k needs n > 3 so that log log n > 0, got n={n}")
    if not 0.0 <= p11 <= 1.0:
        raise ParameterDomainError(f"p11 must lie in [0, 1], got {p11}")
    mean = n * p11
    t1 = mean / math.log(mean) ** 2 if mean > math.e else 0.0
    t2 = math.log(n) / math.log(math.log(n)) ** 2
    return max(1, math.ceil(max(t1, t2)))


def _batched(items: Iterable[tuple], size: int) -> Iterable[list]:
    it = iter(items)
    while batch := list(itertools.islice(it, size)):
        yield batch


def kcore_estimator_bruteforce(
    A: np.ndarray, B: np.ndarray, k: int, limit: int = BRUTE_FORCE_LIMIT
) -> Matching:
    """Largest matching whose intersection graph has min degree >= k, by exhaustive search.

    Sizes are tried from large to small; domains in lexicographic order, then
    images in lexicographic order, so the first hit is the lexicographic
    minimum among maximum matchings.
    """
    A = np.asarray(A, dtype=bool)
    B = np.asarray(B, dtype=bool)
    n = A.shape[0]
    if n > limit:
        raise CapacityError(
            f"brute-force k-core search is limited to n <= {limit} (got n={n}); use oracle mode"
        )
    # a vertex below degree k in its own graph can never reach degree k in an intersection
    domain_pool = np.flatnonzero(A.sum(axis=1) >= k)
    image_pool = np.flatnonzero(B.sum(axis=1) >= k)

    for size in range(min(domain_pool.size, image_pool.size), 0, -1):
        for dom in itertools.combinations(domain_pool.tolist(), size):
            sub_a = A[np.ix_(dom, dom)]
            for batch in _batched(itertools.permutations(image_pool.tolist(), size), _BATCH):
                imgs = np.array(batch, dtype=np.int64)
                sub = sub_a[None, :, :] & B[imgs[:, :, None], imgs[:, None, :]]
                ok = sub.sum(axis=2).min(axis=1) >= k
                if ok.any():
                    hit = imgs[int(np.argmax(ok))]
                    logger.debug({"event": "bruteforce_hit", "size": size, "k": k})
                    return Matching(np.array(dom), hit)
    return Matching.empty()


def kcore_oracle(sample: GraphPairSample, k: int) -> Matching:
    """k-core of the intersection graph under the true permutation, matched by pi_star."""
    if sample.pi_star is None:
        raise ModeError("oracle k-core needs the ground-truth permutation in the sample")
    truth = Matching.from_permutation(sample.pi_star)
    core = kcore_peel(intersection_graph(sample.A, sample.B, truth), k)
    return Matching(core, sample.pi_star[core])


def kcore_estimator(sample: GraphPairSample, cfg: KCoreConfig) -> Matching:
    if cfg.mode == constants.MODE_BRUTE:
        return kcore_estimator_bruteforce(sample.A, sample.B, cfg.k, cfg.brute_force_limit)
    return kcore_oracle(sample, cfg.k)


def map_weights(X: np.ndarray, Y: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """W[a, b] = <x_rows[a], y_cols[b]>.

    Per coordinate the pair log density is
    -(x^2 - 2 rho x y + y^2) / (2 (1 - rho^2)) + const, so over a bijection the
    log-likelihood equals rho / (1 - rho^2) * sum_i <x_i, y_pi(i)> plus terms
    that do not depend on the bijection. Maximizing the inner-product total is
    therefore the MAP rule for any rho in (0, 1).
    """
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    if X.ndim != 2 or Y.ndim != 2 or X.shape[1] != Y.shape[1]:
        raise ShapeError(f"feature matrices disagree on dimension: {X.shape} vs {Y.shape}")
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    if rows.size != cols.size:
        raise ShapeError(f"need |rows| == |cols|, got {rows.size} and {cols.size}")
    return X[rows] @ Y[cols].T


def mismatched_vertices(m: Matching, pi_star: np.ndarray) -> np.ndarray:
    """Domain vertices i with mu(i) != pi_star(i)."""
    return np.sort(m.domain[m.image != np.asarray(pi_star)[m.domain]])
