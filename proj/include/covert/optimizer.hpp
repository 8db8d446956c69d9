#pragma once

#include <string_view>
#include <utility>

#include "covert/errors.hpp"
#include "covert/link.hpp"

namespace covert::optimizer {

/// Throughput maximization under the covertness constraint
/// E_{|h_w|^2}[ζ*] >= 1 - ε, P_D <= P_max, N_D in [n_d_min, n_d_max].
struct DesignProblem {
  double epsilon = 0.05;
  double p_max = 1.0;
  int n_d_min = 50;
  int n_d_max = 100;
  link::LinkParams link;
  double sigma_w2 = 0.05;

  void validate() const;
};

struct CovertPower {
  double p_d = 0.0;
  bool power_capped = false;
};

enum class Boundary { kMin, kInterior, kMax };

std::string_view to_string(Boundary b);

struct DesignSolution {
  double p_d_star = 0.0;
  int n_d_star = 0;
  double throughput = 0.0;
  bool power_capped = false;
  Boundary n_d_boundary = Boundary::kMin;
  /// Exact expected detection error at the returned design falls below
  /// 1 - ε by more than 1e-6.
  bool constraint_violated = false;
};

/// Solves E[ζ*](P_D) = 1 - ε by bracketed bisection (relative tolerance
/// 1e-8) and caps at P_max. The returned power always sits on the feasible
/// side of the root.
CovertPower power_for_covertness_exact(int n_d, const DesignProblem& prob);

/// Closed-form power from the linearized constraint,
/// min(ε σ_w^2 Γ(N) / (N^N e^{-N}), P_max).
CovertPower power_for_covertness_suboptimal(int n_d, const DesignProblem& prob);

/// n_d R P_cc at data power p_d, with the pilot settings of prob.link.
double throughput_at(int n_d, double p_d, const DesignProblem& prob);

/// Exhaustive search over n_d with the exact covert power per blocklength.
DesignSolution solve_p1(const DesignProblem& prob);

/// Closed-form design: n_d = n_d_min with the linearized covert power.
DesignSolution solve_p1_1(const DesignProblem& prob);

/// Throughput at the linearized covert power, for real-valued N (uncapped).
double suboptimal_throughput(double n_d, const DesignProblem& prob);

/// Analytic dT/dN of suboptimal_throughput:
/// R C e^{-A u(N)} [1 - A N u(N) (ln N - ψ(N))], u(N) = N^N e^{-N}/Γ(N),
/// A = σ_b^2 (2^R - 1) / (σ_w^2 (1 - β_b) ε).
double suboptimal_throughput_slope(double n_d, const DesignProblem& prob);

/// Integer argmax of eval(n) over [n_min, n_max]; ties go to the smaller n.
template <class Eval>
std::pair<int, double> argmax_blocklength(int n_min, int n_max, Eval&& eval) {
  if (n_min > n_max) throw DomainError("empty blocklength range");
  int best_n = n_min;
  double best_value = eval(n_min);
  for (int n = n_min + 1; n <= n_max; ++n) {
    const double value = eval(n);
    if (value > best_value) {
      best_value = value;
      best_n = n;
    }
  }
  return {best_n, best_value};
}

}  // namespace covert::optimizer
