#pragma once

#include <optional>

namespace covert::detection {

/// Willie's view of one slot: his receiver noise, the data blocklength and
/// power Alice uses (assumed known to Willie), and optionally the realized
/// channel power gain |h_w|^2.
///
/// Quantities conditioned on a channel realization need `h_w2`; expectations
/// over Rayleigh fading (|h_w|^2 ~ Exp(1)) ignore it.
struct WillieParams {
  double sigma_w2 = 0.05;
  int n_d = 50;
  double p_d = 0.0;
  std::optional<double> h_w2;

  void validate() const;
  /// |h_w|^2, or DomainError when it has not been set.
  double channel_gain() const;
  WillieParams with_gain(double gain) const;
  WillieParams with_power(double power) const;
};

struct DetectionReport {
  double threshold = 0.0;
  double p_fa = 0.0;
  double p_md = 0.0;
  double zeta = 0.0;
};

// -- Conditional radiometer analysis (Willie knows h_w) ----------------------

/// False alarm probability of the radiometer T = (1/N_D) Σ |y_w(i)|^2 > λ.
double p_fa(double lambda, const WillieParams& w);

/// Missed detection probability at threshold λ for the realized |h_w|^2.
double p_md(double lambda, const WillieParams& w);

DetectionReport evaluate(double lambda, const WillieParams& w);

/// Threshold minimizing P_FA + P_MD for a known channel. Throws
/// DegenerateHypothesesError when |h_w|^2 P_D == 0.
double optimal_threshold_csi(const WillieParams& w);

/// Minimum detection error at the CSI-optimal threshold. Equals 1 when
/// |h_w|^2 P_D == 0.
double zeta_star_csi(const WillieParams& w);

/// 1 - zeta_star_csi, evaluated without forming the near-one difference.
double zeta_star_csi_deficit(const WillieParams& w);

/// First-order expansion of zeta_star_csi around P_D = 0. Not clamped, so it
/// turns negative once P_D leaves the low-power region.
double zeta_linear_csi(const WillieParams& w);

/// Slope magnitude of zeta_linear_csi per unit |h_w|^2 P_D:
/// N^N e^{-N} / (σ_w^2 Γ(N)).
double linear_slope(const WillieParams& w);

// -- Fading-averaged analysis (|h_w|^2 ~ Exp(1)) -----------------------------

/// Low-power limit of the CDI-optimal threshold: σ_w^2.
double threshold_cdi_approx(double sigma_w2);

/// E over |h_w|^2 of P_FA + P_MD at a fixed threshold.
double expected_zeta_cdi(double lambda, const WillieParams& w);

/// Argmin over λ of expected_zeta_cdi, by golden-section search.
double threshold_cdi_exact(const WillieParams& w);

enum class CdiThreshold { kExact, kApprox };

/// Minimum expected detection error of a radiometer without CSI.
double zeta_star_cdi(const WillieParams& w,
                     CdiThreshold rule = CdiThreshold::kExact);

/// E over |h_w|^2 of zeta_star_csi. Strictly decreasing in P_D, 1 at P_D = 0.
double expected_zeta_star_csi(const WillieParams& w);

/// 1 - expected_zeta_star_csi, integrated directly so that small covertness
/// budgets ε keep full relative precision.
double expected_zeta_star_csi_deficit(const WillieParams& w);

}  // namespace covert::detection
