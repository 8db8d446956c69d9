#pragma once

#include <optional>

#include "covert/detection.hpp"
#include "covert/link.hpp"
#include "covert/optimizer.hpp"

namespace covert {

/// Scenario constants shared by every command. Defaults are the reference
/// operating point: σ_b^2 = 0.01, σ_w^2 = 0.05, R = 1, P_max = 1, one pilot
/// at full power, N_D in [50, 100].
struct SystemParams {
  double sigma_b2 = 0.01;
  double sigma_w2 = 0.05;
  double rate = 1.0;
  double p_max = 1.0;
  int n_t = 1;
  /// Pilot power; follows p_max when unset.
  std::optional<double> p_t;
  int n_d_min = 50;
  int n_d_max = 100;

  double pilot_power() const { return p_t.value_or(p_max); }
  void validate() const;

  link::LinkParams link(double p_d, int n_d) const;
  detection::WillieParams willie(double p_d, int n_d) const;
  optimizer::DesignProblem problem(double epsilon) const;
};

}  // namespace covert
