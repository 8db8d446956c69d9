#include "covert/link.hpp"

#include <cmath>
#include <numbers>

#include "covert/errors.hpp"

namespace covert::link {

void LinkParams::validate() const {
  if (!std::isfinite(sigma_b2) || !(sigma_b2 > 0.0)) {
    throw DomainError("sigma_b2 must be > 0");
  }
  if (!std::isfinite(rate) || !(rate > 0.0)) throw DomainError("rate must be > 0");
  if (n_t < 1) throw DomainError("n_t must be >= 1");
  if (!std::isfinite(p_t) || !(p_t > 0.0)) throw DomainError("p_t must be > 0");
  if (!std::isfinite(p_d) || p_d < 0.0) throw DomainError("p_d must be >= 0");
  if (n_d < 1) throw DomainError("n_d must be >= 1");
}

LinkParams LinkParams::with_power(double power) const {
  LinkParams copy = *this;
  copy.p_d = power;
  return copy;
}

EstimationModel beta_b(const LinkParams& l) {
  l.validate();
  const double beta = l.sigma_b2 / (l.sigma_b2 + l.n_t * l.p_t);
  return {beta, 1.0 - beta};
}

double snr_requirement(double rate) {
  return std::expm1(rate * std::numbers::ln2);
}

double snr_bob(double h_hat2, double h_tilde2, const LinkParams& l) {
  if (h_hat2 < 0.0 || h_tilde2 < 0.0) {
    throw DomainError("channel power gains must be >= 0");
  }
  return h_hat2 * l.p_d / (h_tilde2 * l.p_d + l.sigma_b2);
}

double covert_connection_prob(const LinkParams& l, const EstimationModel& e) {
  l.validate();
  if (!(e.beta_b >= 0.0 && e.beta_b < 1.0)) {
    throw DomainError("beta_b must lie in [0, 1)");
  }
  if (l.p_d == 0.0) return 0.0;
  const double need = snr_requirement(l.rate);
  const double est = e.estimate_var;
  const double interference = est / (est + e.beta_b * need);
  return interference * std::exp(-l.sigma_b2 * need / (est * l.p_d));
}

double throughput(int n_d, const LinkParams& l, const EstimationModel& e) {
  if (n_d < 1) throw DomainError("n_d must be >= 1");
  return n_d * l.rate * covert_connection_prob(l, e);
}

}  // namespace covert::link
