import math

import pytest
from scipy import special as sp

import covert


def test_gamma_functions_match_scipy():
    assert covert.ln_gamma(50.0) == pytest.approx(sp.gammaln(50.0), rel=1e-14)
    assert covert.reg_lower_gamma(50.0, 50.0) == pytest.approx(sp.gammainc(50.0, 50.0), rel=1e-12)
    assert covert.reg_upper_gamma(50.0, 60.0) == pytest.approx(sp.gammaincc(50.0, 60.0), rel=1e-12)
    assert covert.digamma(50.0) == pytest.approx(sp.digamma(50.0), rel=1e-14)


def test_detection_error_against_scipy_chi_square():
    lam = covert.optimal_threshold_csi(0.05, 50, 0.02, 1.0)
    expected = sp.gammaincc(50, 50 * lam / 0.05) + sp.gammainc(50, 50 * lam / 0.07)
    assert covert.zeta_star_csi(0.05, 50, 0.02, 1.0) == pytest.approx(expected, rel=1e-10)
    assert covert.p_fa(0.05, 1.0, 1) == pytest.approx(math.exp(-0.05), rel=1e-14)


def test_fading_averages():
    assert covert.expected_zeta_star_csi(0.05, 50, 0.0) == 1.0
    assert covert.zeta_star_cdi(0.05, 50, 0.01) >= covert.expected_zeta_star_csi(0.05, 50, 0.01) - 1e-9
    assert covert.threshold_cdi_approx(0.05) == 0.05
    assert abs(covert.threshold_cdi_exact(0.05, 50, 1e-4) / 0.05 - 1.0) < 0.05


def test_design():
    params = covert.SystemParams()
    sol = covert.solve_p1(params, 0.05)
    assert sol.n_d_star == 50
    assert sol.n_d_boundary == "min"
    assert not sol.constraint_violated
    assert covert.expected_zeta_star_csi(0.05, sol.n_d_star, sol.p_d_star) >= 0.95 - 1e-6
    sub = covert.solve_p1_1(params, 0.05)
    assert 0.7 * sol.throughput <= sub.throughput <= sol.throughput
    p, capped = covert.power_for_covertness(params, 0.05, 1, exact=False)
    assert p == pytest.approx(0.05 * 0.05 * math.e, rel=1e-14)
    assert not capped


def test_simulation_agrees_with_closed_form():
    params = covert.SystemParams()
    est = covert.estimate_detection(params, 0.02, 50, trials=100000, seed=3)
    assert abs(est["zeta"] - est["zeta_model"]) <= 3 * est["zeta_stderr"]
    p_cc, se = covert.estimate_pcc(params, 0.05, 50, trials=100000, seed=3)
    assert abs(p_cc - covert.covert_connection_prob(params, 0.05)) <= 3 * se
    again = covert.estimate_detection(params, 0.02, 50, trials=100000, seed=3)
    assert again == est


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        covert.p_fa(-1.0, 0.05, 50)
    with pytest.raises(covert.DomainError):
        covert.SystemParams(sigma_w2=0.0)
    with pytest.raises(ValueError):
        covert.optimal_threshold_csi(0.05, 50, 0.0, 1.0)
    with pytest.raises(ValueError):
        covert.estimate_detection(covert.SystemParams(), 0.02, 50, policy="nope")
