"""Finite-n Monte Carlo checks of the recovery regimes (marked slow)."""
import math

import numpy as np
import pytest

from Experiments.harness import CellOptions, run_cell
from models import EdgeProb, ModelParams
from Recovery.likelihood import h_set
from Recovery.matching import choose_k
from Recovery.model import sample_pair
from Recovery.thresholds import expected_low_degree_bound, gaussian_threshold_d, isolated_floor, subsampling_probs

pytestmark = pytest.mark.slow

S = 0.9


def subsampled(n, np11_factor, d=0, rho=0.0):
    p11 = np11_factor * math.log(n) / n
    return ModelParams(n=n, p=subsampling_probs(p11 / (S * S), S), d=d, rho=rho)


def test_gaussian_phase_transition():
    n, rho = 200, 0.5
    d_star = gaussian_threshold_d(n, rho)
    assert d_star == pytest.approx(73.67, abs=0.01)
    empty = EdgeProb.from_p11(0.0)
    above = run_cell(ModelParams(n=n, p=empty, d=math.ceil(2 * d_star), rho=rho), 50, CellOptions(), seed=1)
    below = run_cell(ModelParams(n=n, p=empty, d=round(0.5 * d_star), rho=rho), 50, CellOptions(), seed=1)
    assert above.success_rate >= 0.9
    assert below.success_rate <= 0.2


def test_kcore_alone_recovers_everything():
    params = subsampled(1000, 2.5)
    assert choose_k(1000, params.p.p11) == 3
    record = run_cell(params, 20, CellOptions(metrics=["exact_success", "kcore_size"]), seed=2)
    assert record.successes >= 17


def test_kcore_partial_matching_size():
    n = 2000
    params = subsampled(n, 0.5)
    options = CellOptions(metrics=["kcore_size"])
    floor = n - n ** 0.9
    hits = 0
    for trial in range(20):
        record = run_cell(params, 1, options, seed=100 + trial)
        hits += record.mean_kcore_size >= floor
    assert hits >= 18


def test_hybrid_achievability():
    n, rho = 1000, 0.5
    d = math.ceil(4 * 0.9 * math.log(n) / math.log(1 / (1 - rho * rho)))
    assert d == 87
    record = run_cell(subsampled(n, 0.6, d=d, rho=rho), 20, CellOptions(metrics=["exact_success"]), seed=3)
    assert record.k == 3
    assert record.successes >= 16


def test_isolated_set_floor():
    n = 2000
    params = subsampled(n, 0.5)
    floor = isolated_floor(n, params.p.p11)
    assert floor == pytest.approx(0.25 * math.sqrt(n))
    above = 0
    for trial in range(40):
        s = sample_pair(params, 500 + trial)
        above += h_set(s.A, s.B, s.pi_star).size >= floor
    assert above >= 38


def test_low_degree_bound_holds_empirically():
    iu_cache = {}
    for n in (100, 1000):
        iu = iu_cache.setdefault(n, np.triu_indices(n, k=1))
        rng = np.random.default_rng(n)
        for c in (2, 5, 10):
            p = c / n
            degrees = []
            for _ in range(200):
                adj = np.zeros((n, n), dtype=bool)
                adj[iu] = rng.random(iu[0].size) < p
                adj |= adj.T
                degrees.append(adj.sum(axis=1))
            for k in (0, 1, 2):
                counts = np.array([(deg <= k).sum() for deg in degrees], dtype=float)
                slack = 2 * counts.std(ddof=1) / math.sqrt(len(counts))
                assert counts.mean() <= expected_low_degree_bound(n, p, k) + slack


def test_unmatched_set_within_three_low_degree_sets():
    params = subsampled(2000, 1.2)
    record = run_cell(params, 20, CellOptions(metrics=["j_vs_3L"]), seed=4)
    assert record.k == 2
    assert record.j_le_3L_rate >= 0.9
