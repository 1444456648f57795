# Experiments/verify.py
"""
Property suites run by `cli.py verify`. Each suite returns checked/violation
counts instead of raising, so a caller can report all of them at once.
"""
from __future__ import annotations

import itertools
from typing import List

import numpy as np
from pydantic import BaseModel

from Core.config import get_logger
from models import EdgeProb, ModelParams
from Recovery.assignment import assignment_value, solve_assignment
from Recovery.graphs import Matching, intersection_graph, isolated_vertices
from Recovery.likelihood import edge_log_likelihood, h_set, log_posterior_ratio, pair_counts, sample_t_star
from Recovery.model import make_rng, sample_pair
from Recovery.thresholds import subsampling_probs

logger = get_logger(__name__)

POSTERIOR_TOL = 1e-9


class SuiteResult(BaseModel):
    name: str
    checked: int
    violations: int

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _bounded_edge_prob(rng: np.random.Generator, low: float = 0.05, high: float = 0.85) -> EdgeProb:
    # rejection sampling from the uniform law on the simplex
    while True:
        w = rng.dirichlet(np.ones(4))
        if np.all((w >= low) & (w <= high)):
            p11, p10, p01 = (float(v) for v in w[:3])
            return EdgeProb.from_p11(p11, p10, p01)


def t_star_suite(instances: int = 50, samples: int = 20, n: int = 50, seed: int = 0) -> SuiteResult:
    """Scrambling the isolated set H* never lowers the common-edge count mu11."""
    rng = make_rng(seed)
    checked = violations = 0
    for _ in range(instances):
        parent = float(rng.uniform(0.5, 3.0)) * np.log(n) / n
        params = ModelParams(n=n, p=subsampling_probs(min(parent, 1.0), float(rng.uniform(0.3, 0.95))), d=0, rho=0.0)
        sample = sample_pair(params, rng)
        base = pair_counts(sample.A, sample.B, sample.pi_star).mu11
        h_star = h_set(sample.A, sample.B, sample.pi_star)
        for _ in range(samples):
            pi = sample_t_star(sample.pi_star, h_star, rng)
            checked += 1
            violations += int(pair_counts(sample.A, sample.B, pi).mu11 < base)
    return SuiteResult(name="t_star", checked=checked, violations=violations)


def posterior_suite(instances: int = 200, max_n: int = 6, seed: int = 0) -> SuiteResult:
    """Direct per-pair log-likelihood differences against the closed-form ratio."""
    rng = make_rng(seed)
    violations = 0
    for _ in range(instances):
        n = int(rng.integers(2, max_n + 1))
        p = _bounded_edge_prob(rng)
        sample = sample_pair(ModelParams(n=n, p=p, d=0, rho=0.0), rng)
        pi1, pi2 = rng.permutation(n), rng.permutation(n)
        direct = edge_log_likelihood(sample.A, sample.B, pi1, p) - edge_log_likelihood(sample.A, sample.B, pi2, p)
        closed = log_posterior_ratio(pair_counts(sample.A, sample.B, pi1), pair_counts(sample.A, sample.B, pi2), p)
        violations += int(abs(direct - closed) > POSTERIOR_TOL)
    return SuiteResult(name="posterior", checked=instances, violations=violations)


def h_set_suite(instances: int = 50, n: int = 30, seed: int = 0) -> SuiteResult:
    """h_set agrees with the isolated vertices of the intersection graph."""
    rng = make_rng(seed)
    violations = 0
    for _ in range(instances):
        p = EdgeProb.from_p11(float(rng.uniform(0.02, 0.2)), float(rng.uniform(0.0, 0.1)), float(rng.uniform(0.0, 0.1)))
        sample = sample_pair(ModelParams(n=n, p=p, d=0, rho=0.0), rng)
        pi = rng.permutation(n)
        expected = isolated_vertices(intersection_graph(sample.A, sample.B, Matching.from_permutation(pi)))
        violations += int(not np.array_equal(h_set(sample.A, sample.B, pi), expected))
    return SuiteResult(name="h_set", checked=instances, violations=violations)


def assignment_suite(instances: int = 100, sizes: tuple = (7, 8), seed: int = 0) -> SuiteResult:
    """Solver optimum against the maximum over every permutation."""
    rng = make_rng(seed)
    checked = violations = 0
    for size in sizes:
        perms = np.array(list(itertools.permutations(range(size))))
        rows = np.arange(size)
        for _ in range(instances):
            W = rng.integers(-20, 21, size=(size, size)).astype(np.float64)
            best = float(W[rows, perms].sum(axis=1).max())
            got = assignment_value(W, solve_assignment(W))
            checked += 1
            violations += int(got != best)
    return SuiteResult(name="assignment", checked=checked, violations=violations)


def run_all(seed: int = 0) -> List[SuiteResult]:
    results = [
        t_star_suite(seed=seed),
        posterior_suite(seed=seed),
        h_set_suite(seed=seed),
        assignment_suite(seed=seed),
    ]
    for result in results:
        logger.info({"event": "suite_done", **result.model_dump()})
    return results
