# Experiments/harness.py
"""
Monte Carlo harness: expands a sweep configuration into cells, runs the
matching pipeline per trial and aggregates success rates and k-core
statistics into ExperimentRecords.

Every random stream is seeded from a SHA-256 hash of the cell content, the
trial index and a stream name, so records do not depend on the order in
which cells are listed or scheduled.
"""
from __future__ import annotations

import hashlib
import math
import multiprocessing
import time
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from Core import constants
from Core.config import BRUTE_FORCE_LIMIT, DEFAULT_SEED, SWEEP_WORKERS, get_logger
from Core.errors import ConfigurationError, GraphMatchError
from models import KCoreConfig, ModelParams
from Recovery.graphs import Matching, intersection_graph, isolated_vertices, kcore_peel, low_degree_set
from Recovery.likelihood import pair_counts, sample_t_star
from Recovery.matching import choose_k, kcore_estimator
from Recovery.model import sample_pair
from Recovery.pipeline import hybrid_match
from Recovery.thresholds import gaussian_threshold_d, subsampling_probs

logger = get_logger(__name__)

Metric = Literal["exact_success", "kcore_size", "h_star_size", "low_degree_sizes", "j_vs_3L"]


# -----------------------------
# Configuration
# -----------------------------
class GridSpec(BaseModel):
    """Cells on the subsampling model: np11 in multiples of log n, d in multiples of d*."""

    model_config = ConfigDict(frozen=True)

    n: List[int] = Field(min_length=1)
    np11_factors: List[float] = Field(min_length=1)
    s: float = Field(default=0.9, gt=0.0, le=1.0)
    rho: List[float] = Field(default_factory=lambda: [0.0])
    d_factors: List[float] = Field(default_factory=lambda: [0.0])


class CellOptions(BaseModel):
    """How each cell is run; shared by every cell of a sweep."""

    model_config = ConfigDict(frozen=True)

    mode: Literal["brute", "oracle"] = constants.MODE_ORACLE
    k: Union[Literal["auto"], int] = "auto"
    metrics: List[Metric] = Field(default_factory=lambda: list(constants.METRICS))
    record_timing: bool = False

    @model_validator(mode="after")
    def _positive_k(self) -> "CellOptions":
        if self.k != "auto" and self.k < 1:
            raise ValueError(f"k must be 'auto' or a positive integer, got {self.k}")
        return self


class SweepConfig(CellOptions):
    schema_version: Literal[1] = constants.SCHEMA_VERSION
    grid: List[ModelParams] = Field(default_factory=list)
    generator: Optional[GridSpec] = None
    trials: int = Field(ge=1)
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    workers: int = Field(default=SWEEP_WORKERS, ge=1)

    @model_validator(mode="after")
    def _nonempty(self) -> "SweepConfig":
        if not self.grid and self.generator is None:
            raise ValueError("sweep needs an explicit grid or a generator")
        return self


class ExperimentRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    params: ModelParams
    k: int
    mode: str
    trials: int
    successes: int
    mean_kcore_size: Optional[float] = None
    mean_h_star: Optional[float] = None
    mean_L_counts: Optional[List[float]] = None
    mean_J_k: Optional[float] = None
    j_le_3L_rate: Optional[float] = None
    violations: Dict[str, int] = Field(default_factory=dict)
    wall_ms: float = 0.0

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials

    @property
    def mean_L_k1(self) -> Optional[float]:
        """Mean |L_(k+1)|, the last entry of mean_L_counts."""
        return self.mean_L_counts[-1] if self.mean_L_counts else None

    def csv_row(self) -> Dict[str, object]:
        p = self.params.p
        return {
            "n": self.params.n,
            "p11": p.p11,
            "p10": p.p10,
            "p01": p.p01,
            "p00": p.p00,
            "d": self.params.d,
            "rho": self.params.rho,
            "k": self.k,
            "mode": self.mode,
            "trials": self.trials,
            "successes": self.successes,
            "success_rate": self.success_rate,
            "mean_kcore_size": self.mean_kcore_size,
            "mean_h_star": self.mean_h_star,
            "mean_L_k1": self.mean_L_k1,
            "mean_J_k": self.mean_J_k,
            "j_le_3L_rate": self.j_le_3L_rate,
            "wall_ms": self.wall_ms,
        }


# -----------------------------
# Seeds and grid
# -----------------------------
def derive_seed(master: int, params: ModelParams, trial: int, stream: str) -> int:
    """64-bit seed from SHA-256 over (master, n, p, d, rho, trial, stream)."""
    p = params.p
    parts = (master, params.n, repr(p.p11), repr(p.p10), repr(p.p01), repr(p.p00), params.d, repr(params.rho), trial, stream)
    digest = hashlib.sha256("|".join(str(x) for x in parts).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def _generated_cells(spec: GridSpec) -> List[ModelParams]:
    cells: List[ModelParams] = []
    for n in spec.n:
        for factor in spec.np11_factors:
            if n < 2:
                raise ConfigurationError(f"generated cells need n >= 2, got {n}")
            p11 = factor * math.log(n) / n
            parent = p11 / (spec.s * spec.s)
            if not 0.0 <= parent <= 1.0:
                raise ConfigurationError(f"np11 = {factor:g} log n at n={n}, s={spec.s:g} needs parent p = {parent:g} > 1")
            p = subsampling_probs(parent, spec.s)
            for rho in spec.rho:
                for d_factor in spec.d_factors:
                    if d_factor == 0.0:
                        d = 0
                    elif 0.0 < rho < 1.0:
                        d = int(round(d_factor * gaussian_threshold_d(n, rho)))
                    else:
                        raise ConfigurationError(f"d_factors need 0 < rho < 1, got rho={rho:g}")
                    cells.append(ModelParams(n=n, p=p, d=d, rho=rho))
    return cells


def expand_grid(cfg: SweepConfig) -> List[ModelParams]:
    """Explicit grid followed by generated cells."""
    cells = list(cfg.grid)
    if cfg.generator is not None:
        cells.extend(_generated_cells(cfg.generator))
    if not cells:
        raise ConfigurationError("sweep grid is empty")
    return cells


def _describe(params: ModelParams) -> str:
    p = params.p
    return f"n={params.n} p=({p.p11:g},{p.p10:g},{p.p01:g},{p.p00:g}) d={params.d} rho={params.rho:g}"


def resolve_k(params: ModelParams, options: CellOptions) -> int:
    if options.k != "auto":
        return int(options.k)
    try:
        return choose_k(params.n, params.p.p11)
    except GraphMatchError as e:
        raise ConfigurationError(f"cannot choose k automatically: {e}") from e


def check_cell(params: ModelParams, options: CellOptions) -> int:
    """Raise ConfigurationError for a cell that cannot run; returns its k."""
    if params.d == 0 and params.p.p11 == 0.0:
        raise ConfigurationError("p11 = 0 and d = 0: neither graphs nor features carry information")
    if options.mode == constants.MODE_BRUTE and params.n > BRUTE_FORCE_LIMIT:
        raise ConfigurationError(
            f"brute-force mode is limited to n <= {BRUTE_FORCE_LIMIT}, got n={params.n}; use oracle mode"
        )
    return resolve_k(params, options)


# -----------------------------
# Cells
# -----------------------------
def _mean(values: Sequence[float]) -> float:
    return float(np.mean(values)) if len(values) else 0.0


def run_cell(params: ModelParams, trials: int, options: CellOptions, seed: int) -> ExperimentRecord:
    """Run `trials` independent samples of one parameter cell."""
    if trials < 1:
        raise ConfigurationError(f"trials must be >= 1, got {trials}")
    k = check_cell(params, options)
    metrics = set(options.metrics)
    kcfg = KCoreConfig(k=k, mode=options.mode, brute_force_limit=BRUTE_FORCE_LIMIT)
    n = params.n

    started = time.perf_counter()
    successes = 0
    kcore_sizes: List[int] = []
    h_sizes: List[int] = []
    l_counts: List[List[int]] = []
    j_sizes: List[int] = []
    j_ok = 0
    violations = {"t_star_overlap": 0, "unmatched_bound": 0, "kcore_mismatch": 0}

    for trial in range(trials):
        sample = sample_pair(params, derive_seed(seed, params, trial, "sample"))
        pi_star = sample.pi_star

        if params.d == 0:
            kcore = kcore_estimator(sample, kcfg)
            matched_wrong = int(np.count_nonzero(kcore.image != pi_star[kcore.domain]))
            success = kcore.size == n and matched_wrong == 0
            kcore_size = kcore.size
        else:
            estimate = hybrid_match(sample, kcfg)
            tagged = np.array([tag == constants.PROVENANCE_KCORE for tag in estimate.provenance])
            matched_wrong = int(np.count_nonzero(estimate.pi_hat[tagged] != pi_star[tagged]))
            success = estimate.is_exact(pi_star)
            kcore_size = estimate.kcore_size

        successes += int(success)
        kcore_sizes.append(kcore_size)
        violations["kcore_mismatch"] += int(matched_wrong > 0)

        if metrics & {"h_star_size", "low_degree_sizes", "j_vs_3L"}:
            g = intersection_graph(sample.A, sample.B, Matching.from_permutation(pi_star))
            if "h_star_size" in metrics:
                h_star = isolated_vertices(g)
                h_sizes.append(int(h_star.size))
                t_pi = sample_t_star(pi_star, h_star, derive_seed(seed, params, trial, "t_star"))
                if pair_counts(sample.A, sample.B, t_pi).mu11 < pair_counts(sample.A, sample.B, pi_star).mu11:
                    violations["t_star_overlap"] += 1
            if "low_degree_sizes" in metrics:
                l_counts.append([int(low_degree_set(g, j).size) for j in range(k + 2)])
            if "j_vs_3L" in metrics:
                j_size = n - int(kcore_peel(g, k).size)
                j_sizes.append(j_size)
                within = j_size <= 3 * int(low_degree_set(g, k + 1).size)
                j_ok += int(within)
                violations["unmatched_bound"] += int(not within)

    elapsed_ms = (time.perf_counter() - started) * 1000.0
    record = ExperimentRecord(
        params=params,
        k=k,
        mode=options.mode,
        trials=trials,
        successes=successes,
        mean_kcore_size=_mean(kcore_sizes) if "kcore_size" in metrics else None,
        mean_h_star=_mean(h_sizes) if "h_star_size" in metrics else None,
        mean_L_counts=np.mean(l_counts, axis=0).tolist() if "low_degree_sizes" in metrics else None,
        mean_J_k=_mean(j_sizes) if "j_vs_3L" in metrics else None,
        j_le_3L_rate=j_ok / trials if "j_vs_3L" in metrics else None,
        violations=violations,
        wall_ms=elapsed_ms if options.record_timing else 0.0,
    )
    logger.info({"event": "cell_done", "cell": _describe(params), "k": k, "successes": successes, "trials": trials})
    return record


def _run_cell_task(task: Tuple[ModelParams, int, CellOptions, int]) -> ExperimentRecord:
    return run_cell(*task)


def run_sweep(cfg: SweepConfig, workers: Optional[int] = None) -> List[ExperimentRecord]:
    """Run every cell; records come back in grid order whatever the worker count."""
    cells = expand_grid(cfg)
    options = CellOptions(mode=cfg.mode, k=cfg.k, metrics=cfg.metrics, record_timing=cfg.record_timing)
    for index, params in enumerate(cells):
        try:
            check_cell(params, options)
        except ConfigurationError as e:
            raise ConfigurationError(f"cell {index} ({_describe(params)}): {e}") from e

    tasks = [(params, cfg.trials, options, cfg.seed) for params in cells]
    workers = min(workers or cfg.workers, len(tasks))
    logger.info({"event": "sweep_start", "cells": len(tasks), "trials": cfg.trials, "workers": workers})
    if workers <= 1:
        return [_run_cell_task(task) for task in tasks]
    with multiprocessing.Pool(processes=workers) as pool:
        return pool.map(_run_cell_task, tasks)
