#pragma once

namespace covert::link {

/// Alice-to-Bob link: receiver noise, fixed rate, pilot block and data
/// parameters. The pilot block is N_T unit-modulus symbols sent at power P_T.
struct LinkParams {
  double sigma_b2 = 0.01;
  double rate = 1.0;
  int n_t = 1;
  double p_t = 1.0;
  double p_d = 0.0;
  int n_d = 50;

  void validate() const;
  LinkParams with_power(double power) const;
};

/// LMMSE decomposition h_b = ĥ_b + h̃_b: error variance β_b and estimate
/// variance 1 - β_b.
struct EstimationModel {
  double beta_b = 0.0;
  double estimate_var = 1.0;
};

EstimationModel beta_b(const LinkParams& l);

/// 2^R - 1, the SNR Bob needs to decode at rate R.
double snr_requirement(double rate);

/// γ_b = |ĥ|^2 P_D / (|h̃|^2 P_D + σ_b^2).
double snr_bob(double h_hat2, double h_tilde2, const LinkParams& l);

/// Probability that log2(1 + γ_b) > R when |ĥ|^2 ~ Exp(1-β_b) and
/// |h̃|^2 ~ Exp(β_b) are independent. Zero for P_D = 0.
double covert_connection_prob(const LinkParams& l, const EstimationModel& e);

/// Expected bits delivered per slot, n_d R P_cc (data symbols only).
double throughput(int n_d, const LinkParams& l, const EstimationModel& e);

}  // namespace covert::link
