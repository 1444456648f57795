# API/schemas.py
"""
Versioned JSON containers shared by the HTTP routes and the CLI.

Vertex ids are 1-based in every document and 0-based inside the library.
"""
from __future__ import annotations

from typing import List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, Field

from Core import constants
from Core.config import DEFAULT_SEED
from Core.errors import ShapeError, VertexIndexError
from models import ModelParams
from Recovery.matching import PermutationEstimate
from Recovery.model import GraphPairSample


def _neighbor_lists(adj: np.ndarray) -> List[List[int]]:
    return [(np.flatnonzero(row) + 1).tolist() for row in adj]


def _adjacency(lists: List[List[int]], n: int, name: str) -> np.ndarray:
    if len(lists) != n:
        raise ShapeError(f"{name} has {len(lists)} neighbor lists, expected n={n}")
    adj = np.zeros((n, n), dtype=bool)
    for i, neighbors in enumerate(lists):
        for j in neighbors:
            if not 1 <= j <= n:
                raise VertexIndexError(f"{name}: vertex {i + 1} lists neighbor {j} outside [1, {n}]")
            adj[i, j - 1] = True
    return adj


def _features(rows: List[List[float]], n: int, d: int, name: str) -> np.ndarray:
    if len(rows) != n or any(len(r) != d for r in rows):
        raise ShapeError(f"{name} must have {n} rows of length d={d}")
    return np.asarray(rows, dtype=np.float64).reshape(n, d)


class SampleDocument(BaseModel):
    """GraphPairSample as JSON: neighbor lists, feature rows, optional pi_star."""

    schema_version: Literal[1] = constants.SCHEMA_VERSION
    n: int = Field(ge=1)
    d: int = Field(ge=0)
    adjacency_a: List[List[int]]
    adjacency_b: List[List[int]]
    features_x: List[List[float]]
    features_y: List[List[float]]
    pi_star: Optional[List[int]] = None
    params: Optional[ModelParams] = None
    seed: Optional[int] = None

    @classmethod
    def from_sample(
        cls,
        sample: GraphPairSample,
        params: Optional[ModelParams] = None,
        seed: Optional[int] = None,
        include_truth: bool = True,
    ) -> "SampleDocument":
        truth = (sample.pi_star + 1).tolist() if include_truth and sample.has_truth else None
        return cls(
            n=sample.n,
            d=sample.d,
            adjacency_a=_neighbor_lists(sample.A),
            adjacency_b=_neighbor_lists(sample.B),
            features_x=sample.X.tolist(),
            features_y=sample.Y.tolist(),
            pi_star=truth,
            params=params,
            seed=seed,
        )

    def to_sample(self) -> GraphPairSample:
        n, d = self.n, self.d
        pi_star = None
        if self.pi_star is not None:
            if len(self.pi_star) != n:
                raise ShapeError(f"pi_star has {len(self.pi_star)} entries, expected n={n}")
            pi_star = np.asarray(self.pi_star, dtype=np.int64) - 1
        sample = GraphPairSample(
            A=_adjacency(self.adjacency_a, n, "adjacency_a"),
            B=_adjacency(self.adjacency_b, n, "adjacency_b"),
            X=_features(self.features_x, n, d, "features_x"),
            Y=_features(self.features_y, n, d, "features_y"),
            pi_star=pi_star,
        )
        return sample.validate()


class EstimateDocument(BaseModel):
    schema_version: Literal[1] = constants.SCHEMA_VERSION
    n: int
    k: int
    mode: str
    pi_hat: List[int]
    provenance: List[Literal["kcore", "feature"]]
    kcore_size: int
    exact: Optional[bool] = None

    @classmethod
    def from_estimate(
        cls, estimate: PermutationEstimate, k: int, mode: str, pi_star: Optional[np.ndarray] = None
    ) -> "EstimateDocument":
        return cls(
            n=int(estimate.pi_hat.size),
            k=k,
            mode=mode,
            pi_hat=(estimate.pi_hat + 1).tolist(),
            provenance=list(estimate.provenance),
            kcore_size=estimate.kcore_size,
            exact=None if pi_star is None else estimate.is_exact(pi_star),
        )


class GenerateRequest(BaseModel):
    params: ModelParams
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    include_truth: bool = True


class MatchRequest(BaseModel):
    sample: SampleDocument
    k: Union[Literal["auto"], int] = "auto"
    mode: Literal["brute", "oracle"] = constants.MODE_ORACLE


class RegimeRequest(BaseModel):
    params: ModelParams
    epsilon: float = Field(gt=0.0)
    margin: float = 0.0
    sparsity_constant: float = Field(default=1.0, gt=0.0)
    check_sparsity: bool = True


class ErrorDocument(BaseModel):
    schema_version: Literal[1] = constants.SCHEMA_VERSION
    error: str
    exit_code: int
    message: str
