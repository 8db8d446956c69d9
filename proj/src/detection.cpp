#include "covert/detection.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "covert/errors.hpp"
#include "covert/special.hpp"
#include "fading_average.hpp"

namespace covert::detection {
namespace {

using special::reg_lower_gamma;
using special::reg_upper_gamma;

void require_threshold(double lambda) {
  if (!std::isfinite(lambda) || !(lambda > 0.0)) {
    throw DomainError("detection threshold must be finite and > 0, got " +
                      std::to_string(lambda));
  }
}

// P(a, x_hi) - P(a, x_lo) for x_lo <= x_hi, using whichever tail keeps
// the two terms away from 1.
double gamma_mass_between(double a, double x_lo, double x_hi) {
  // A narrow window holds far less mass than either tail, so subtracting two
  // CDF values would cancel. Integrate the density over the window instead,
  // provided the log-density moves by only a few units across it.
  const double log_density_slope = (a - 1.0) / x_lo + 1.0;
  if ((x_hi - x_lo) * log_density_slope <= 8.0) {
    const double log_norm = special::ln_gamma(a);
    return boost::math::quadrature::gauss<double, 20>::integrate(
        [&](double t) { return std::exp((a - 1.0) * std::log(t) - t - log_norm); },
        x_lo, x_hi);
  }
  if (x_lo >= a + 1.0) {
    return reg_upper_gamma(a, x_lo) - reg_upper_gamma(a, x_hi);
  }
  return reg_lower_gamma(a, x_hi) - reg_lower_gamma(a, x_lo);
}

// Received SNR |h_w|^2 P_D / σ_w^2.
double willie_snr(const WillieParams& w) {
  return w.channel_gain() * w.p_d / w.sigma_w2;
}

// Detection deficit 1 - E[ζ(λ)] of a fixed-threshold radiometer.
double expected_deficit_cdi(double lambda, const WillieParams& w) {
  const double n = w.n_d;
  const double x_noise = n * lambda / w.sigma_w2;
  return detail::exponential_average(
      [&](double g) {
        const double x_signal = n * lambda / (g * w.p_d + w.sigma_w2);
        return gamma_mass_between(n, x_signal, x_noise);
      },
      "expected_zeta_cdi");
}

}  // namespace

void WillieParams::validate() const {
  if (!std::isfinite(sigma_w2) || !(sigma_w2 > 0.0)) {
    throw DomainError("sigma_w2 must be > 0");
  }
  if (n_d < 1) throw DomainError("n_d must be >= 1");
  if (!std::isfinite(p_d) || p_d < 0.0) throw DomainError("p_d must be >= 0");
  if (h_w2 && (!std::isfinite(*h_w2) || *h_w2 < 0.0)) {
    throw DomainError("h_w2 must be >= 0");
  }
}

double WillieParams::channel_gain() const {
  if (!h_w2) {
    throw DomainError("conditional detection quantity requires h_w2");
  }
  return *h_w2;
}

WillieParams WillieParams::with_gain(double gain) const {
  WillieParams copy = *this;
  copy.h_w2 = gain;
  return copy;
}

WillieParams WillieParams::with_power(double power) const {
  WillieParams copy = *this;
  copy.p_d = power;
  return copy;
}

double p_fa(double lambda, const WillieParams& w) {
  require_threshold(lambda);
  w.validate();
  return reg_upper_gamma(w.n_d, w.n_d * lambda / w.sigma_w2);
}

double p_md(double lambda, const WillieParams& w) {
  require_threshold(lambda);
  w.validate();
  const double h1_var = w.channel_gain() * w.p_d + w.sigma_w2;
  return reg_lower_gamma(w.n_d, w.n_d * lambda / h1_var);
}

DetectionReport evaluate(double lambda, const WillieParams& w) {
  DetectionReport r;
  r.threshold = lambda;
  r.p_fa = p_fa(lambda, w);
  r.p_md = p_md(lambda, w);
  r.zeta = r.p_fa + r.p_md;
  return r;
}

double optimal_threshold_csi(const WillieParams& w) {
  w.validate();
  const double snr = willie_snr(w);
  if (!(snr > 0.0)) {
    throw DegenerateHypothesesError(
        "optimal_threshold_csi: |h_w|^2 P_D = 0, hypotheses coincide");
  }
  return w.sigma_w2 * (1.0 + 1.0 / snr) * std::log1p(snr);
}

double zeta_star_csi_deficit(const WillieParams& w) {
  w.validate();
  const double snr = willie_snr(w);
  if (!(snr > 0.0)) return 0.0;
  if (std::isinf(snr)) return 1.0;
  const double n = w.n_d;
  const double log_gain = std::log1p(snr);
  // Normalized thresholds N λ*/(|h|^2 P + σ^2) and N λ*/σ^2.
  const double x_signal = n * log_gain / snr;
  const double x_noise = n * (log_gain / snr + log_gain);
  return gamma_mass_between(n, x_signal, x_noise);
}

double zeta_star_csi(const WillieParams& w) {
  return 1.0 - zeta_star_csi_deficit(w);
}

double linear_slope(const WillieParams& w) {
  w.validate();
  return std::exp(special::log_slope_factor(w.n_d)) / w.sigma_w2;
}

double zeta_linear_csi(const WillieParams& w) {
  return 1.0 - w.channel_gain() * linear_slope(w) * w.p_d;
}

double threshold_cdi_approx(double sigma_w2) {
  if (!std::isfinite(sigma_w2) || !(sigma_w2 > 0.0)) {
    throw DomainError("sigma_w2 must be > 0");
  }
  return sigma_w2;
}

double expected_zeta_cdi(double lambda, const WillieParams& w) {
  require_threshold(lambda);
  w.validate();
  if (w.p_d == 0.0) return 1.0;
  return 1.0 - expected_deficit_cdi(lambda, w);
}

double threshold_cdi_exact(const WillieParams& w) {
  w.validate();
  if (!(w.p_d > 0.0)) {
    throw DomainError("threshold_cdi_exact requires p_d > 0");
  }
  constexpr double kRelTol = 1e-7;
  constexpr double kInvPhi = 0.6180339887498949;
  const double snr = w.p_d / w.sigma_w2;
  double lo = 0.1 * w.sigma_w2;
  double hi = w.sigma_w2 * (1.0 + snr) * (1.0 + std::log1p(snr));
  auto objective = [&](double lambda) { return -expected_deficit_cdi(lambda, w); };

  for (int expansion = 0; expansion < 60; ++expansion) {
    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > kRelTol * 0.5 * (a + b)) {
      if (fc <= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = objective(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = objective(d);
      }
    }
    const double argmin = 0.5 * (a + b);
    // A minimizer pinned to either end of the bracket is not interior.
    const double margin = 1e-4 * (hi - lo);
    if (argmin > hi - margin) {
      hi *= 2.0;
    } else if (argmin < lo + margin) {
      lo *= 0.5;
    } else {
      return argmin;
    }
  }
  throw NumericError("threshold_cdi_exact: failed to bracket a minimum for p_d=" +
                     std::to_string(w.p_d) + ", n_d=" + std::to_string(w.n_d));
}

double zeta_star_cdi(const WillieParams& w, CdiThreshold rule) {
  w.validate();
  if (w.p_d == 0.0) return 1.0;
  const double lambda = rule == CdiThreshold::kExact
                            ? threshold_cdi_exact(w)
                            : threshold_cdi_approx(w.sigma_w2);
  return expected_zeta_cdi(lambda, w);
}

double expected_zeta_star_csi_deficit(const WillieParams& w) {
  w.validate();
  if (w.p_d == 0.0) return 0.0;
  return detail::exponential_average(
      [&](double g) { return zeta_star_csi_deficit(w.with_gain(g)); },
      "expected_zeta_star_csi");
}

double expected_zeta_star_csi(const WillieParams& w) {
  return 1.0 - expected_zeta_star_csi_deficit(w);
}

}  // namespace covert::detection
