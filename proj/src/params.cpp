#include "covert/params.hpp"

#include "covert/errors.hpp"

namespace covert {

void SystemParams::validate() const {
  link(0.0, n_d_min).validate();
  detection::WillieParams w{sigma_w2, n_d_min, 0.0, std::nullopt};
  w.validate();
  if (!(p_max > 0.0)) throw DomainError("p_max must be > 0");
  if (n_d_min < 1 || n_d_min > n_d_max) {
    throw DomainError("need 1 <= n_d_min <= n_d_max");
  }
}

link::LinkParams SystemParams::link(double p_d, int n_d) const {
  link::LinkParams l;
  l.sigma_b2 = sigma_b2;
  l.rate = rate;
  l.n_t = n_t;
  l.p_t = pilot_power();
  l.p_d = p_d;
  l.n_d = n_d;
  return l;
}

detection::WillieParams SystemParams::willie(double p_d, int n_d) const {
  return {sigma_w2, n_d, p_d, std::nullopt};
}

optimizer::DesignProblem SystemParams::problem(double epsilon) const {
  optimizer::DesignProblem prob;
  prob.epsilon = epsilon;
  prob.p_max = p_max;
  prob.n_d_min = n_d_min;
  prob.n_d_max = n_d_max;
  prob.link = link(0.0, n_d_min);
  prob.sigma_w2 = sigma_w2;
  return prob;
}

}  // namespace covert
