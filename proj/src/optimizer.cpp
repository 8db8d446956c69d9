#include "covert/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "covert/detection.hpp"
#include "covert/special.hpp"

namespace covert::optimizer {
namespace {

constexpr double kBisectionRelTol = 1e-8;
constexpr double kConstraintSlack = 1e-6;
constexpr int kMaxSteps = 400;

detection::WillieParams willie(int n_d, double p_d, const DesignProblem& prob) {
  detection::WillieParams w;
  w.sigma_w2 = prob.sigma_w2;
  w.n_d = n_d;
  w.p_d = p_d;
  return w;
}

double covert_deficit(int n_d, double p_d, const DesignProblem& prob) {
  return detection::expected_zeta_star_csi_deficit(willie(n_d, p_d, prob));
}

void require_blocklength(int n_d) {
  if (n_d < 1) throw DomainError("n_d must be >= 1");
}

Boundary classify(int n_d, const DesignProblem& prob) {
  if (n_d == prob.n_d_min) return Boundary::kMin;
  if (n_d == prob.n_d_max) return Boundary::kMax;
  return Boundary::kInterior;
}

DesignSolution finish(int n_d, const CovertPower& power,
                      const DesignProblem& prob) {
  DesignSolution s;
  s.n_d_star = n_d;
  s.p_d_star = power.p_d;
  s.power_capped = power.power_capped;
  s.throughput = throughput_at(n_d, power.p_d, prob);
  s.n_d_boundary = classify(n_d, prob);
  s.constraint_violated =
      covert_deficit(n_d, power.p_d, prob) > prob.epsilon + kConstraintSlack;
  return s;
}

}  // namespace

void DesignProblem::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
  if (!std::isfinite(p_max) || !(p_max > 0.0)) throw DomainError("p_max must be > 0");
  if (n_d_min < 1 || n_d_min > n_d_max) {
    throw DomainError("need 1 <= n_d_min <= n_d_max");
  }
  if (!std::isfinite(sigma_w2) || !(sigma_w2 > 0.0)) {
    throw DomainError("sigma_w2 must be > 0");
  }
  link.validate();
}

std::string_view to_string(Boundary b) {
  switch (b) {
    case Boundary::kMin:
      return "min";
    case Boundary::kInterior:
      return "interior";
    case Boundary::kMax:
      return "max";
  }
  return "?";
}

CovertPower power_for_covertness_exact(int n_d, const DesignProblem& prob) {
  prob.validate();
  require_blocklength(n_d);
  const double eps = prob.epsilon;
  auto deficit = [&](double p) { return covert_deficit(n_d, p, prob); };

  // deficit(0) = 0 < ε and deficit is strictly increasing, so grow the upper
  // end until it overshoots ε or reaches P_max.
  double lo = 0.0;
  double hi = std::min(prob.sigma_w2, prob.p_max);
  int steps = 0;
  while (deficit(hi) <= eps) {
    if (hi >= prob.p_max) return {prob.p_max, true};
    lo = hi;
    hi = std::min(2.0 * hi, prob.p_max);
    if (++steps > kMaxSteps) {
      throw NumericError("power_for_covertness_exact: root not bracketed");
    }
  }
  steps = 0;
  while (hi - lo > kBisectionRelTol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (deficit(mid) <= eps) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (++steps > kMaxSteps) {
      throw NumericError("power_for_covertness_exact: bisection stalled");
    }
  }
  return {lo, false};
}

CovertPower power_for_covertness_suboptimal(int n_d, const DesignProblem& prob) {
  prob.validate();
  require_blocklength(n_d);
  const double p = prob.epsilon * prob.sigma_w2 *
                   std::exp(-special::log_slope_factor(n_d));
  if (p > prob.p_max) return {prob.p_max, true};
  return {p, false};
}

double throughput_at(int n_d, double p_d, const DesignProblem& prob) {
  link::LinkParams l = prob.link.with_power(p_d);
  l.n_d = n_d;
  return link::throughput(n_d, l, link::beta_b(l));
}

DesignSolution solve_p1(const DesignProblem& prob) {
  prob.validate();
  auto [n_best, value] = argmax_blocklength(
      prob.n_d_min, prob.n_d_max, [&](int n_d) {
        try {
          return throughput_at(n_d, power_for_covertness_exact(n_d, prob).p_d,
                               prob);
        } catch (const NumericError& e) {
          throw NumericError("solve_p1 at n_d=" + std::to_string(n_d) + ": " +
                             e.what());
        }
      });
  (void)value;
  return finish(n_best, power_for_covertness_exact(n_best, prob), prob);
}

DesignSolution solve_p1_1(const DesignProblem& prob) {
  prob.validate();
  const int n_d = prob.n_d_min;
  return finish(n_d, power_for_covertness_suboptimal(n_d, prob), prob);
}

namespace {

struct LinearizedLink {
  double rate;
  double interference;  // C = (1-β)/((1-β) + β(2^R-1))
  double outage_scale;  // A
};

LinearizedLink linearized(const DesignProblem& prob) {
  prob.validate();
  const auto e = link::beta_b(prob.link);
  const double need = link::snr_requirement(prob.link.rate);
  return {prob.link.rate,
          e.estimate_var / (e.estimate_var + e.beta_b * need),
          prob.link.sigma_b2 * need /
              (prob.sigma_w2 * e.estimate_var * prob.epsilon)};
}

}  // namespace

double suboptimal_throughput(double n_d, const DesignProblem& prob) {
  const auto lin = linearized(prob);
  const double u = std::exp(special::log_slope_factor(n_d));
  return n_d * lin.rate * lin.interference * std::exp(-lin.outage_scale * u);
}

double suboptimal_throughput_slope(double n_d, const DesignProblem& prob) {
  const auto lin = linearized(prob);
  const double u = std::exp(special::log_slope_factor(n_d));
  const double a = lin.outage_scale;
  return lin.rate * lin.interference * std::exp(-a * u) *
         (1.0 - a * n_d * u * (std::log(n_d) - special::digamma(n_d)));
}

}  // namespace covert::optimizer
