# Recovery/graphs.py
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np

from Core.errors import MatchingError, VertexIndexError


def _as_vertices(values: Iterable[int] | np.ndarray) -> np.ndarray:
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=np.int64)
    return arr.reshape(-1)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


# -----------------------------
# Matching
# -----------------------------
@dataclass(frozen=True)
class Matching:
    """Partial injective map i -> image[i] for i in domain (0-based vertex ids)."""

    domain: np.ndarray
    image: np.ndarray

    def __post_init__(self) -> None:
        domain = _as_vertices(self.domain)
        image = _as_vertices(self.image)
        if domain.shape != image.shape:
            raise MatchingError("domain and image must have the same length")
        if np.unique(domain).size != domain.size:
            raise MatchingError("duplicate domain vertex in matching")
        if np.unique(image).size != image.size:
            raise MatchingError("matching is not injective (duplicate image vertex)")
        if domain.size and (domain.min() < 0 or image.min() < 0):
            raise VertexIndexError("negative vertex id in matching")
        # keep pairs sorted by domain vertex
        order = np.argsort(domain, kind="stable")
        object.__setattr__(self, "domain", _readonly(domain[order]))
        object.__setattr__(self, "image", _readonly(image[order]))

    @classmethod
    def empty(cls) -> "Matching":
        return cls(np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]]) -> "Matching":
        pairs = list(pairs)
        if not pairs:
            return cls.empty()
        dom, img = zip(*pairs)
        return cls(np.array(dom), np.array(img))

    @classmethod
    def from_permutation(cls, pi: np.ndarray, vertices: Optional[np.ndarray] = None) -> "Matching":
        pi = _as_vertices(pi)
        vertices = np.arange(pi.size) if vertices is None else _as_vertices(vertices)
        return cls(vertices, pi[vertices])

    @property
    def size(self) -> int:
        return int(self.domain.size)

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(self.domain, self.image)]

    def restrict(self, vertices: np.ndarray) -> "Matching":
        keep = np.isin(self.domain, _as_vertices(vertices))
        return Matching(self.domain[keep], self.image[keep])

    def check_bounds(self, n: int) -> None:
        if self.size and (self.domain.max() >= n or self.image.max() >= n):
            raise VertexIndexError(f"matching references a vertex outside [0, {n})")


# -----------------------------
# Intersection graph
# -----------------------------
@dataclass(frozen=True)
class IntersectionGraph:
    """Graph on `vertices`; adjacency rows/columns follow the order of `vertices`."""

    vertices: np.ndarray
    adjacency: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", _readonly(_as_vertices(self.vertices)))
        object.__setattr__(self, "adjacency", _readonly(np.asarray(self.adjacency, dtype=bool)))

    @classmethod
    def from_adjacency(cls, adjacency: np.ndarray) -> "IntersectionGraph":
        adjacency = np.asarray(adjacency, dtype=bool)
        return cls(np.arange(adjacency.shape[0]), adjacency)

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1).astype(np.int64)

    def induced(self, vertices: np.ndarray) -> "IntersectionGraph":
        vertices = _as_vertices(vertices)
        pos = np.flatnonzero(np.isin(self.vertices, vertices))
        return IntersectionGraph(self.vertices[pos], self.adjacency[np.ix_(pos, pos)])

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(int(v) for v in self.vertices)
        rows, cols = np.nonzero(np.triu(self.adjacency, 1))
        graph.add_edges_from(zip(self.vertices[rows].tolist(), self.vertices[cols].tolist()))
        return graph


def intersection_graph(A: np.ndarray, B: np.ndarray, m: Matching) -> IntersectionGraph:
    """Edges (u, v) of G1 whose images (mu(u), mu(v)) are edges of G2."""
    m.check_bounds(min(A.shape[0], B.shape[0]))
    dom, img = m.domain, m.image
    sub = np.asarray(A, dtype=bool)[np.ix_(dom, dom)] & np.asarray(B, dtype=bool)[np.ix_(img, img)]
    return IntersectionGraph(dom, sub)


def kcore_peel(g: IntersectionGraph, k: int) -> np.ndarray:
    """Vertex set of the k-core (largest induced subgraph with min degree >= k)."""
    if k <= 0:
        return np.sort(g.vertices)
    core = nx.core_number(g.to_networkx())
    return np.array(sorted(v for v, c in core.items() if c >= k), dtype=np.int64)


def low_degree_set(g: IntersectionGraph, k: int) -> np.ndarray:
    return np.sort(g.vertices[g.degrees <= k])


def isolated_vertices(g: IntersectionGraph) -> np.ndarray:
    return low_degree_set(g, 0)


def min_degree(g: IntersectionGraph) -> int | float:
    """Minimum degree; +inf on the empty vertex set so `min_degree >= k` holds vacuously."""
    if g.vertices.size == 0:
        return math.inf
    return int(g.degrees.min())
