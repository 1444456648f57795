# API/service.py
"""
Request handling shared by the HTTP routes and the CLI, so neither carries
matching logic of its own.
"""
from __future__ import annotations

from typing import Literal, Optional, Union

from Core.config import get_logger
from Core.errors import ParameterDomainError
from models import KCoreConfig, ModelParams
from Recovery.likelihood import pair_counts
from Recovery.matching import choose_k
from Recovery.model import sample_pair
from Recovery.pipeline import hybrid_match
from Recovery.thresholds import RegimeReport, regime_report

from .schemas import EstimateDocument, MatchRequest, RegimeRequest, SampleDocument

logger = get_logger(__name__)


def generate_document(params: ModelParams, seed: int, include_truth: bool = True) -> SampleDocument:
    sample = sample_pair(params, seed)
    return SampleDocument.from_sample(sample, params=params, seed=seed, include_truth=include_truth)


def _auto_k(doc: SampleDocument) -> int:
    if doc.params is not None:
        return choose_k(doc.n, doc.params.p.p11)
    if doc.pi_star is not None:
        # empirical p11: common edges under the true permutation over all pairs
        sample = doc.to_sample()
        pairs = doc.n * (doc.n - 1) / 2
        return choose_k(doc.n, pair_counts(sample.A, sample.B, sample.pi_star).mu11 / max(pairs, 1.0))
    raise ParameterDomainError("k = auto needs the sample's params or its pi_star; pass an integer k")


def match_document(
    doc: SampleDocument,
    k: Union[Literal["auto"], int] = "auto",
    mode: str = "oracle",
    brute_force_limit: Optional[int] = None,
) -> EstimateDocument:
    resolved = _auto_k(doc) if k == "auto" else int(k)
    cfg_args = {"k": resolved, "mode": mode}
    if brute_force_limit is not None:
        cfg_args["brute_force_limit"] = brute_force_limit
    cfg = KCoreConfig(**cfg_args)
    sample = doc.to_sample()
    estimate = hybrid_match(sample, cfg)
    return EstimateDocument.from_estimate(estimate, k=resolved, mode=mode, pi_star=sample.pi_star)


def handle_match(request: MatchRequest) -> EstimateDocument:
    return match_document(request.sample, k=request.k, mode=request.mode)


def handle_regime(request: RegimeRequest) -> RegimeReport:
    return regime_report(
        request.params,
        request.epsilon,
        margin=request.margin,
        sparsity_constant=request.sparsity_constant,
        check_sparsity=request.check_sparsity,
    )
