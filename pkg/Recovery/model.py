# Recovery/model.py
"""
Sampling of the correlated Gaussian-attributed Erdos-Renyi model.

Random stream: numpy's counter-based Philox generator seeded with a 64-bit
integer. Draws are consumed in a fixed order (X row-major, then Z row-major,
then one uniform per unordered pair (i < j) in lexicographic order, then the
hidden permutation), so a seed and a parameter set pin down the sample bit
for bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from Core.config import get_logger
from Core.errors import ParameterDomainError, ShapeError
from models import EdgeProb, ModelParams
from Recovery.thresholds import subsampling_probs

logger = get_logger(__name__)

Seed = int
SeedLike = Union[Seed, np.random.Generator]

_SEED_LIMIT = 2**64


def make_rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    seed = int(seed)
    if not 0 <= seed < _SEED_LIMIT:
        raise ParameterDomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.Philox(seed))


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GraphPairSample:
    """One draw (A, B, X, Y, pi_star); B and Y are already relabeled by pi_star."""

    A: np.ndarray
    B: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    pi_star: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return int(self.A.shape[0])

    @property
    def d(self) -> int:
        return int(self.X.shape[1])

    @property
    def has_truth(self) -> bool:
        return self.pi_star is not None

    def without_truth(self) -> "GraphPairSample":
        return GraphPairSample(self.A, self.B, self.X, self.Y, None)

    def validate(self) -> "GraphPairSample":
        n = self.n
        for name, adj in (("A", self.A), ("B", self.B)):
            if adj.shape != (n, n):
                raise ShapeError(f"{name} must be {n}x{n}, got {adj.shape}")
            if not np.array_equal(adj, adj.T):
                raise ShapeError(f"{name} is not symmetric")
            if adj.diagonal().any():
                raise ShapeError(f"{name} has a nonzero diagonal")
        if self.X.shape != self.Y.shape or self.X.shape[0] != n:
            raise ShapeError(f"feature matrices must both be {n}xd, got {self.X.shape} and {self.Y.shape}")
        if self.pi_star is not None and not np.array_equal(np.sort(self.pi_star), np.arange(n)):
            raise ShapeError("pi_star is not a permutation of [n]")
        return self


def sample_pair(params: ModelParams, seed: SeedLike) -> GraphPairSample:
    """Draw a correlated graph pair with Gaussian features under a uniformly random hidden permutation."""
    rng = make_rng(seed)
    n, d, rho = params.n, params.d, params.rho
    p = params.p

    X = rng.standard_normal((n, d))
    Z = rng.standard_normal((n, d))
    Y_prime = rho * X + np.sqrt(1.0 - rho * rho) * Z

    iu, ju = np.triu_indices(n, k=1)
    u = rng.random(iu.size)
    c11 = p.p11
    c10 = c11 + p.p10
    c01 = c10 + p.p01
    a_edge = u < c10
    b_edge = (u < c11) | ((u >= c10) & (u < c01))

    A = np.zeros((n, n), dtype=bool)
    B_prime = np.zeros((n, n), dtype=bool)
    A[iu, ju] = a_edge
    B_prime[iu, ju] = b_edge
    A |= A.T
    B_prime |= B_prime.T

    pi_star = rng.permutation(n).astype(np.int64)

    # B[pi(i), pi(j)] = B'[i, j] and row pi(i) of Y is y'_i
    B = np.zeros_like(B_prime)
    B[np.ix_(pi_star, pi_star)] = B_prime
    Y = np.empty_like(Y_prime)
    Y[pi_star] = Y_prime

    logger.debug({"event": "sample_drawn", "n": n, "d": d, "edges_a": int(a_edge.sum()), "edges_b": int(b_edge.sum())})
    return GraphPairSample(_frozen(A), _frozen(B), _frozen(X), _frozen(Y), _frozen(pi_star))


def sample_gaussian_only(n: int, d: int, rho: float, seed: SeedLike) -> GraphPairSample:
    """Correlated Gaussian databases: the model with p = (0, 0, 0, 1)."""
    params = ModelParams(n=n, p=EdgeProb(p11=0.0, p10=0.0, p01=0.0, p00=1.0), d=d, rho=rho)
    return sample_pair(params, seed)


def sample_subsampled(n: int, p: float, s: float, d: int, rho: float, seed: SeedLike) -> GraphPairSample:
    """Both graphs subsample the edges of one G(n, p) parent with rate s."""
    return sample_pair(ModelParams(n=n, p=subsampling_probs(p, s), d=d, rho=rho), seed)
