"""Covert communication analysis under quasi-static Rayleigh fading.

Thin Python layer over the compiled ``_core`` extension.
"""

from ._core import (
    DesignSolution,
    DomainError,
    NumericError,
    SystemParams,
    beta_b,
    covert_connection_prob,
    digamma,
    estimate_detection,
    estimate_pcc,
    expected_zeta_cdi,
    expected_zeta_star_csi,
    ln_gamma,
    optimal_threshold_csi,
    p_fa,
    p_md,
    power_for_covertness,
    reg_lower_gamma,
    reg_upper_gamma,
    solve_p1,
    solve_p1_1,
    threshold_cdi_approx,
    threshold_cdi_exact,
    zeta_linear_csi,
    zeta_star_cdi,
    zeta_star_csi,
)

__all__ = [
    "DesignSolution",
    "DomainError",
    "NumericError",
    "SystemParams",
    "beta_b",
    "covert_connection_prob",
    "digamma",
    "estimate_detection",
    "estimate_pcc",
    "expected_zeta_cdi",
    "expected_zeta_star_csi",
    "ln_gamma",
    "optimal_threshold_csi",
    "p_fa",
    "p_md",
    "power_for_covertness",
    "reg_lower_gamma",
    "reg_upper_gamma",
    "solve_p1",
    "solve_p1_1",
    "threshold_cdi_approx",
    "threshold_cdi_exact",
    "zeta_linear_csi",
    "zeta_star_cdi",
    "zeta_star_csi",
]
