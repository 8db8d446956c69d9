#pragma once

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "covert/errors.hpp"

namespace covert::detail {

// Expectations over a unit-mean exponential channel gain are truncated at
// kGainCutoff (e^{-28} < 1e-12); the tail is bounded analytically.
inline constexpr double kGainCutoff = 28.0;
inline constexpr double kAbsTolerance = 1e-8;

// E[f(g)], g ~ Exp(1), for f nondecreasing with values in [0, 1].
// The tail ∫_G^∞ e^{-g} f(g) dg lies in [e^{-G} f(G), e^{-G}]; the lower end
// is used.
template <class F>
double exponential_average(F&& f, const char* what) {
  double error = 0.0;
  const double body = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double g) { return std::exp(-g) * f(g); }, 0.0, kGainCutoff, 15,
      1e-12, &error);
  if (!std::isfinite(body) || error > kAbsTolerance) {
    throw NumericError(std::string(what) +
                       ": fading quadrature did not converge (estimate=" +
                       std::to_string(body) +
                       ", error=" + std::to_string(error) + ")");
  }
  return body + std::exp(-kGainCutoff) * f(kGainCutoff);
}

}  // namespace covert::detail
