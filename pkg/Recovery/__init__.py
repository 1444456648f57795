# Recovery/__init__.py
"""
Sampling, estimators and threshold evaluators for seedless matching of
correlated Gaussian-attributed Erdos-Renyi graphs.
"""

from .graphs import IntersectionGraph, Matching
from .matching import PermutationEstimate, choose_k, kcore_estimator
from .model import GraphPairSample, sample_pair
from .pipeline import build_app, hybrid_match

__all__ = [
    "GraphPairSample",
    "IntersectionGraph",
    "Matching",
    "PermutationEstimate",
    "build_app",
    "choose_k",
    "hybrid_match",
    "kcore_estimator",
    "sample_pair",
]
