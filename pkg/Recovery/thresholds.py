# Recovery/thresholds.py
"""
Closed-form evaluators for the exact-recovery thresholds and the bounds used
by the k-core analysis.

The theorems are asymptotic. Every O(.) / omega(1) is turned into a finite-n
predicate with an explicit constant (sparsity constant C = 1, corollary
margin = 0 by default); RegimeReport.notes labels each such surrogate.
"""
from __future__ import annotations

import math
from typing import List

from pydantic import BaseModel, ConfigDict

from Core.errors import DivisionDomainError, ParameterDomainError
from models import EdgeProb, ModelParams


class RegimeReport(BaseModel):
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    info_sum: float
    log_n: float
    epsilon: float
    margin: float
    achievable: bool
    impossible: bool
    corollary_impossible: bool
    sparsity_ok: bool
    positive_corr: bool
    sparsity_ratio: float | None
    sparsity_limit: float
    sparsity_constant: float
    edge_signal: float
    kcore_exact: bool
    d_regime_ok: bool
    corollary_rho_ok: bool
    notes: List[str]


def feature_information(d: int, rho: float) -> float:
    """(d/4) log 1/(1 - rho^2); +inf when rho = 1 and d >= 1."""
    if d == 0 or rho == 0.0:
        return 0.0
    if rho >= 1.0:
        return math.inf
    return d / 4.0 * -math.log1p(-rho * rho)


def _log_log(n: int) -> float:
    # clamped at 0 below n = e^e^0 so the sparsity limit stays finite
    log_n = math.log(n)
    return math.log(log_n) if log_n > 1.0 else 0.0


def positive_correlation(p: EdgeProb) -> bool:
    return p.p11 * p.p00 > p.p10 * p.p01


def edge_signal(n: int, p: EdgeProb) -> float:
    """n (sqrt(p11 p00) - sqrt(p10 p01))^2, the edge-only exact-matching statistic."""
    return n * (math.sqrt(p.p11 * p.p00) - math.sqrt(p.p10 * p.p01)) ** 2


def regime_report(
    params: ModelParams,
    epsilon: float,
    *,
    margin: float = 0.0,
    sparsity_constant: float = 1.0,
    check_sparsity: bool = True,
) -> RegimeReport:
    if epsilon <= 0:
        raise ParameterDomainError(f"epsilon must be positive, got {epsilon}")
    n, p, d, rho = params.n, params.p, params.d, params.rho
    log_n = math.log(n)
    info = n * p.p11 + feature_information(d, rho)
    notes = [
        f"finite-n surrogate: sparsity uses p1*p*1/p11 <= C*exp(-(log log n)^3) with C = {sparsity_constant:g}",
        f"finite-n surrogate: corollary slack omega(1) replaced by margin = {margin:g}",
        "finite-n surrogate: 1 << d = O(log n) read as 1 <= d <= log n",
    ]

    limit = sparsity_constant * math.exp(-_log_log(n) ** 3)
    ratio: float | None = None
    sparsity_ok = True
    if check_sparsity:
        if p.p11 == 0.0:
            raise DivisionDomainError("sparsity check divides by p11, which is 0")
        ratio = p.p1_star * p.p_star1 / p.p11
        sparsity_ok = ratio <= limit

    positive = positive_correlation(p)
    rho_ok = rho > 0.0 and (1.0 / (rho * rho) - 1.0) <= d / 40.0
    corollary = (
        positive
        and d >= 1
        and rho_ok
        and info <= log_n - math.log(d) - margin
    )
    return RegimeReport(
        info_sum=info,
        log_n=log_n,
        epsilon=epsilon,
        margin=margin,
        achievable=info >= (1.0 + epsilon) * log_n,
        impossible=positive and info <= (1.0 - epsilon) * log_n,
        corollary_impossible=corollary,
        sparsity_ok=sparsity_ok,
        positive_corr=positive,
        sparsity_ratio=ratio,
        sparsity_limit=limit,
        sparsity_constant=sparsity_constant,
        edge_signal=edge_signal(n, p),
        kcore_exact=n * p.p11 >= (1.0 + epsilon) * log_n,
        d_regime_ok=1 <= d <= log_n,
        corollary_rho_ok=rho_ok,
        notes=notes,
    )


def subsampling_probs(p: float, s: float) -> EdgeProb:
    """Two independent rate-s subsamples of one G(n, p) parent graph."""
    if not (0.0 <= p <= 1.0 and 0.0 <= s <= 1.0):
        raise ParameterDomainError(f"subsampling needs p, s in [0, 1], got p={p}, s={s}")
    ps = p * s
    return EdgeProb(p11=ps * s, p10=ps * (1.0 - s), p01=ps * (1.0 - s), p00=1.0 - 2.0 * ps + ps * s)


def expected_low_degree_bound(n: int, p: float, k: int) -> float:
    """Upper bound n exp(-np + k log np + 1) on E|{i : deg(i) <= k}| in G(n, p)."""
    mean = n * p
    if mean <= 0:
        raise ParameterDomainError(f"np must be positive, got {mean}")
    return n * math.exp(-mean + k * math.log(mean) + 1.0)


def kcore_exact_failure_bound(n: int, p11: float, k: int) -> float:
    """Union bound on P(|M_k| != n): n exp(-np11 + (k-1) log np11 + 1)."""
    mean = n * p11
    if mean <= 0:
        raise ParameterDomainError(f"np11 must be positive, got {mean}")
    return n * math.exp(-mean + (k - 1) * math.log(mean) + 1.0)


def unmatched_size_bound(n: int, p11: float, k: int) -> float:
    """n^(1 - (np11 - (k+1) log np11) / log n), the size bound on [n] minus M_k."""
    mean = n * p11
    if mean <= 0 or n < 2:
        raise ParameterDomainError("needs np11 > 0 and n >= 2")
    return n ** (1.0 - (mean - (k + 1) * math.log(mean)) / math.log(n))


def expected_isolated(n: int, p: float) -> float:
    return n * (1.0 - p) ** (n - 1)


def isolated_floor(n: int, p11: float) -> float:
    """1/4 n^(1 - np11 / log n), the high-probability floor on |H*|."""
    if n < 2:
        raise ParameterDomainError("needs n >= 2")
    return 0.25 * n ** (1.0 - n * p11 / math.log(n))


def default_theta(n: int) -> float:
    return _log_log(n) ** 2.5


def xi_exponential_bound(n: int, p: EdgeProb, k: int, theta: float) -> float:
    """Per-error exponent rate theta k - e^(2 theta) p11 - n e^(6 theta) p1* p*1."""
    if theta <= 0:
        raise ParameterDomainError(f"theta must be positive, got {theta}")
    noise = p.p1_star * p.p_star1
    # skip exp() on zero coefficients; large theta would overflow to inf * 0
    rate = theta * k
    if p.p11 > 0:
        rate -= math.exp(2.0 * theta) * p.p11
    if noise > 0:
        rate -= n * math.exp(6.0 * theta) * noise
    return rate


def xi_certified(rate: float, n: int) -> bool:
    """rate >= 2 log n puts xi below n^-2 for these finite parameters."""
    return rate >= 2.0 * math.log(n)


def gaussian_threshold_d(n: int, rho: float, epsilon: float = 0.0) -> float:
    """(1 + epsilon) d*, with d* = 4 log n / log(1 / (1 - rho^2))."""
    if not 0.0 < rho < 1.0:
        raise ParameterDomainError(f"rho must lie in (0, 1), got {rho}")
    return (1.0 + epsilon) * 4.0 * math.log(n) / -math.log1p(-rho * rho)
