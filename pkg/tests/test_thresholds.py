import math

import pytest

from Core.errors import DivisionDomainError, ParameterDomainError
from models import EdgeProb, ModelParams
from Recovery.matching import choose_k
from Recovery.thresholds import (
    default_theta,
    edge_signal,
    expected_isolated,
    expected_low_degree_bound,
    feature_information,
    gaussian_threshold_d,
    isolated_floor,
    kcore_exact_failure_bound,
    positive_correlation,
    regime_report,
    subsampling_probs,
    unmatched_size_bound,
    xi_certified,
    xi_exponential_bound,
)


def million(np11=10.0, d=20, rho=0.9):
    n = 10**6
    return ModelParams(n=n, p=EdgeProb.from_p11(np11 / n), d=d, rho=rho)


def test_regime_example_is_achievable():
    report = regime_report(million(), 0.1)
    assert report.info_sum == pytest.approx(10 + 5 * math.log(1 / 0.19), rel=1e-12)
    assert report.info_sum == pytest.approx(18.30, abs=0.01)
    assert report.achievable
    assert not report.impossible
    assert not report.kcore_exact


def test_zero_correlation_has_no_feature_information():
    assert regime_report(million(rho=0.0), 0.1).info_sum == pytest.approx(10.0)
    assert feature_information(0, 0.7) == 0.0


def test_full_correlation_is_infinite():
    report = regime_report(million(rho=1.0), 0.1)
    assert math.isinf(report.info_sum) and report.achievable
    assert "Infinity" in report.model_dump_json()


def test_impossible_below_threshold():
    report = regime_report(million(np11=2.0, d=2, rho=0.5), 0.1)
    assert report.impossible and not report.achievable


def test_independent_graphs_are_never_impossible():
    p = EdgeProb(p11=0.25, p10=0.25, p01=0.25, p00=0.25)
    report = regime_report(ModelParams(n=1000, p=p, d=0, rho=0.0), 0.1)
    assert not positive_correlation(p)
    assert not report.positive_corr and not report.impossible


def test_regime_monotone_in_epsilon():
    params = million(np11=12.0, d=4, rho=0.8)
    for small, large in [(0.01, 0.05), (0.05, 0.2), (0.2, 0.5)]:
        if regime_report(params, large).achievable:
            assert regime_report(params, small).achievable
        if regime_report(params, large).impossible:
            assert regime_report(params, small).impossible


def test_regime_errors():
    with pytest.raises(ParameterDomainError):
        regime_report(million(), 0.0)
    with pytest.raises(DivisionDomainError):
        regime_report(million(np11=0.0), 0.1)
    assert regime_report(million(np11=0.0), 0.1, check_sparsity=False).sparsity_ratio is None


def test_corollary_condition():
    n = 10**4
    params = ModelParams(n=n, p=EdgeProb.from_p11(2.0 / n), d=4, rho=0.99)
    report = regime_report(params, 0.1)
    assert report.corollary_rho_ok
    assert report.corollary_impossible == (report.info_sum <= math.log(n) - math.log(4))
    assert not regime_report(params, 0.1, margin=100.0).corollary_impossible


def test_subsampling_probs():
    assert subsampling_probs(0.5, 0.5).as_tuple() == pytest.approx((0.125, 0.125, 0.125, 0.625))
    assert subsampling_probs(0.3, 1.0).as_tuple() == pytest.approx((0.3, 0.0, 0.0, 0.7))
    assert subsampling_probs(0.3, 0.0).as_tuple() == pytest.approx((0.0, 0.0, 0.0, 1.0))
    with pytest.raises(ParameterDomainError):
        subsampling_probs(1.5, 0.5)


def test_low_degree_bound():
    assert expected_low_degree_bound(100, 0.05, 2) == pytest.approx(45.79, abs=0.01)
    assert expected_low_degree_bound(100, 0.05, 0) == pytest.approx(100 * math.exp(-4))
    assert expected_low_degree_bound(50, 0.02, 3) == pytest.approx(50.0)
    with pytest.raises(ParameterDomainError):
        expected_low_degree_bound(10, 0.0, 1)


def test_gaussian_threshold():
    assert gaussian_threshold_d(500, 0.5) == pytest.approx(86.41, abs=0.01)
    rho = math.sqrt(1 - 1 / math.e)
    assert gaussian_threshold_d(1000, rho) == pytest.approx(4 * math.log(1000))
    assert gaussian_threshold_d(200, 0.5) == pytest.approx(73.67, abs=0.01)
    assert gaussian_threshold_d(500, 0.5, epsilon=0.5) == pytest.approx(1.5 * gaussian_threshold_d(500, 0.5))
    for rho in (0.0, 1.0):
        with pytest.raises(ParameterDomainError):
            gaussian_threshold_d(100, rho)


def test_xi_bound():
    empty = EdgeProb.from_p11(0.0)
    assert xi_exponential_bound(100, empty, 3, 2.0) == pytest.approx(6.0)
    assert xi_exponential_bound(100, EdgeProb.from_p11(0.01), 0, 1.0) < 0
    with pytest.raises(ParameterDomainError):
        xi_exponential_bound(100, empty, 1, 0.0)


def test_xi_chain_through_subsampling():
    n = 10**4
    p = subsampling_probs(1e-3, 0.9)
    k = choose_k(n, p.p11)
    theta = default_theta(n)
    rate = xi_exponential_bound(n, p, k, theta)
    expected = theta * k - math.exp(2 * theta) * p.p11 - n * math.exp(6 * theta) * p.p1_star * p.p_star1
    assert rate == pytest.approx(expected)
    assert xi_certified(rate, n) == (rate >= 2 * math.log(n))


def test_isolated_statistics():
    n = 2000
    assert isolated_floor(n, 0.5 * math.log(n) / n) == pytest.approx(0.25 * math.sqrt(n))
    assert expected_isolated(10, 0.0) == 10
    assert expected_isolated(10, 1.0) == 0


def test_kcore_bounds():
    n, p11, k = 1000, 10 * math.log(1000) / 1000, 3
    assert kcore_exact_failure_bound(n, p11, k) == pytest.approx(n * math.exp(-n * p11 + 2 * math.log(n * p11) + 1))
    assert 0 < unmatched_size_bound(n, p11, k) < n


def test_edge_signal():
    assert edge_signal(100, EdgeProb(p11=0.25, p10=0.25, p01=0.25, p00=0.25)) == pytest.approx(0.0)
    assert edge_signal(100, EdgeProb.from_p11(0.04)) == pytest.approx(100 * 0.04 * 0.96)
