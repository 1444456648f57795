# Recovery/pipeline.py
"""
Two-stage matcher as a small LangGraph state machine.

    plan -> act -> observe -> plan ... -> finish

Stage "kcore" matches the vertices of the k-core; stage "complete" matches the
leftovers J = [n] minus the matched domain to J' = [n] minus the matched images
by maximum-weight assignment on feature inner products.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Any, Dict, List, Optional, TypedDict

import numpy as np
from langgraph.graph import END, START, StateGraph

from Core import constants
from Core.config import get_logger
from Core.errors import InfeasibleCompletionError
from models import KCoreConfig
from Recovery.assignment import solve_assignment
from Recovery.graphs import Matching
from Recovery.matching import PermutationEstimate, kcore_estimator, map_weights
from Recovery.model import GraphPairSample

logger = get_logger(__name__)


class PipelineState(TypedDict, total=False):
    sample: GraphPairSample
    cfg: KCoreConfig
    kcore: Matching
    completion: Matching
    leftover_rows: np.ndarray
    leftover_cols: np.ndarray
    tried: List[str]
    next_step: Optional[str]
    steps: int
    done: bool
    result: PermutationEstimate


def _complement(n: int, used: np.ndarray) -> np.ndarray:
    mask = np.ones(n, dtype=bool)
    mask[used] = False
    return np.flatnonzero(mask).astype(np.int64)


# -----------------------------
# Planner
# -----------------------------
def planner(state: PipelineState) -> PipelineState:
    tried = state.get("tried", [])
    sample = state["sample"]

    if "kcore" not in tried:
        state["next_step"] = "kcore"
        return state

    rows = state["leftover_rows"]
    if rows.size and "complete" not in tried:
        if sample.d == 0:
            raise InfeasibleCompletionError(
                f"{rows.size} vertices are left after the k-core stage and d = 0; "
                "there are no features to match them"
            )
        state["next_step"] = "complete"
        return state

    state["done"] = True
    return state


# -----------------------------
# Actor
# -----------------------------
def actor(state: PipelineState) -> PipelineState:
    step = state.get("next_step")
    state.setdefault("tried", []).append(step or "none")
    sample = state["sample"]

    if step == "kcore":
        state["kcore"] = kcore_estimator(sample, state["cfg"])

    elif step == "complete":
        rows, cols = state["leftover_rows"], state["leftover_cols"]
        W = map_weights(sample.X, sample.Y, rows, cols)
        local = solve_assignment(W)
        state["completion"] = Matching(rows[local.domain], cols[local.image])

    return state


# -----------------------------
# Observer
# -----------------------------
def observer(state: PipelineState) -> PipelineState:
    state["steps"] = state.get("steps", 0) + 1
    if state.get("next_step") == "kcore":
        n = state["sample"].n
        kcore = state["kcore"]
        state["leftover_rows"] = _complement(n, kcore.domain)
        state["leftover_cols"] = _complement(n, kcore.image)
        logger.debug({"event": "kcore_stage", "matched": kcore.size, "leftover": int(n - kcore.size)})
    state.pop("next_step", None)
    return state


# -----------------------------
# Finisher
# -----------------------------
def finisher(state: PipelineState) -> Dict[str, Any]:
    n = state["sample"].n
    kcore = state["kcore"]
    completion = state.get("completion") or Matching.empty()

    pi_hat = np.empty(n, dtype=np.int64)
    tags = [constants.PROVENANCE_FEATURE] * n
    pi_hat[kcore.domain] = kcore.image
    pi_hat[completion.domain] = completion.image
    for i in kcore.domain.tolist():
        tags[i] = constants.PROVENANCE_KCORE

    state["result"] = PermutationEstimate(pi_hat, tuple(tags))
    return state


# -----------------------------
# Build Graph
# -----------------------------
def build_app():
    """Build and compile the matching graph."""
    graph = StateGraph(PipelineState)

    graph.add_node("plan", planner)
    graph.add_node("act", actor)
    graph.add_node("observe", observer)
    graph.add_node("finish", finisher)

    graph.add_edge(START, "plan")

    def route_after_plan(state: PipelineState):
        return "finish" if state.get("done") else "act"

    graph.add_conditional_edges("plan", route_after_plan, {"finish": "finish", "act": "act"})
    graph.add_edge("act", "observe")
    graph.add_edge("observe", "plan")
    graph.add_edge("finish", END)

    return graph.compile()


@lru_cache(maxsize=1)
def get_app():
    return build_app()


def hybrid_match(sample: GraphPairSample, cfg: KCoreConfig) -> PermutationEstimate:
    """k-core matching on the graphs, then MAP completion of the rest from the features."""
    final = get_app().invoke({"sample": sample, "cfg": cfg, "tried": [], "steps": 0, "done": False})
    result: PermutationEstimate = final["result"]
    logger.info({"event": "hybrid_match", "n": sample.n, "k": cfg.k, "mode": cfg.mode, "kcore_size": result.kcore_size})
    return result
