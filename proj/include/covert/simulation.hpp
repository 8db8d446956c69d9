#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "covert/params.hpp"

namespace covert::simulation {

using Complex = std::complex<double>;

enum class Hypothesis { kH0, kH1 };

std::string_view to_string(Hypothesis h);

/// A system configuration plus the data block Alice would send.
struct Scenario {
  SystemParams system;
  int n_d = 50;
  double p_d = 0.0;
};

enum class ThresholdPolicy { kCsiOptimal, kCdiExact, kCdiApprox, kFixed };

std::string_view to_string(ThresholdPolicy p);
std::optional<ThresholdPolicy> parse_policy(std::string_view text);

struct McConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  ThresholdPolicy policy = ThresholdPolicy::kCsiOptimal;
  double fixed_lambda = 0.0;  // used by ThresholdPolicy::kFixed
  unsigned threads = 0;       // 0: hardware concurrency
};

/// xoshiro256** keyed by (seed, stream, slot) through SplitMix64, so every
/// slot owns an independent, reproducible substream.
class SlotRng {
 public:
  static SlotRng for_slot(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t slot);

  std::uint64_t next();
  /// Uniform on (0, 1].
  double uniform();
  /// CN(0, variance) from one Box-Muller pair: real and imaginary parts are
  /// independent N(0, variance / 2).
  Complex complex_normal(double variance);

 private:
  std::uint64_t s_[4];
};

/// Threshold selection for one run. CSI-optimal thresholds are recomputed
/// per slot from the true |h_w|^2; the other policies are fixed per run.
class ThresholdRule {
 public:
  static ThresholdRule resolve(const Scenario& sc, const McConfig& mc);

  double for_gain(double h_w2) const;
  ThresholdPolicy policy() const { return policy_; }

 private:
  ThresholdPolicy policy_ = ThresholdPolicy::kFixed;
  double lambda_ = 0.0;
  detection::WillieParams willie_;
};

struct SlotTrace {
  std::uint64_t slot = 0;
  Hypothesis hypothesis = Hypothesis::kH0;
  Complex h_b;
  Complex h_w;
  Complex h_b_hat;
  Complex h_b_tilde;
  double threshold = 0.0;
  double statistic = 0.0;
  Hypothesis decision = Hypothesis::kH0;
  /// log2(1 + γ_b) <= R; only defined for H1 slots.
  std::optional<bool> outage;
};

/// One slot. Draw order: h_b, N_T pilot noise samples, h_w, then for each
/// data symbol x_D(i) (H1 only) followed by n_w(i).
SlotTrace simulate_slot(const Scenario& sc, Hypothesis hypothesis,
                        const ThresholdRule& rule, SlotRng& rng,
                        std::uint64_t slot = 0);

/// Empirical detection rates with binomial standard errors. `*_model` are
/// the closed forms averaged over the simulated channel draws, i.e. the exact
/// conditional expectations of the empirical rates.
struct DetectionEstimate {
  std::uint64_t h0_slots = 0;
  std::uint64_t h1_slots = 0;
  double p_fa_hat = 0.0;
  double p_md_hat = 0.0;
  double zeta_hat = 0.0;
  double p_fa_stderr = 0.0;
  double p_md_stderr = 0.0;
  double zeta_stderr = 0.0;
  double p_fa_model = 0.0;
  double p_md_model = 0.0;
  double zeta_model = 0.0;
};

/// trials / 2 slots under H0 and the remainder under H1.
DetectionEstimate estimate_detection(const Scenario& sc, const McConfig& mc);

struct PccEstimate {
  std::uint64_t slots = 0;
  double p_cc_hat = 0.0;
  double standard_error = 0.0;
};

/// Fraction of H1 slots without outage.
PccEstimate estimate_pcc(const Scenario& sc, const McConfig& mc);

/// Sample moments of the LMMSE decomposition over H1 slots.
struct EstimationMoments {
  std::uint64_t slots = 0;
  double mean_hat2 = 0.0;    // E|ĥ_b|^2
  double mean_tilde2 = 0.0;  // E|h̃_b|^2
  double correlation = 0.0;  // |E[ĥ h̃*]| / sqrt(E|ĥ|^2 E|h̃|^2)
};

EstimationMoments estimation_moments(const Scenario& sc, const McConfig& mc);

/// Binomial standard error sqrt(p (1 - p) / n); NaN when n == 0.
double binomial_stderr(double p, std::uint64_t n);

/// First `count` slots of the detection run (H0 slots first), for dumping.
std::vector<SlotTrace> collect_traces(const Scenario& sc, const McConfig& mc,
                                      std::uint64_t count);

/// CSV: slot,hypothesis,h_b_re,h_b_im,h_w_re,h_w_im,statistic,decision,outage
void write_trace_csv(std::ostream& os, const std::vector<SlotTrace>& traces);

}  // namespace covert::simulation
