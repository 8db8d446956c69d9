#include "covert/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "covert/errors.hpp"

namespace covert::special {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 100000;

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw DomainError(std::string(what) + " must be finite and > 0, got " +
                      std::to_string(v));
  }
}

// Stirling series for ln Γ(z), accurate to ~1e-16 relative once z >= 15.
double ln_gamma_stirling(double z) {
  static constexpr double kCoeff[] = {
      1.0 / 12.0,   -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0, -691.0 / 360360.0,  1.0 / 156.0,  -3617.0 / 122400.0};
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  double term = inv;
  double sum = 0.0;
  for (double c : kCoeff) {
    sum += c * term;
    term *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) +
         sum;
}

struct GammaPair {
  double lower;
  double upper;
};

// ln(x^a e^{-x} / Γ(a)), shared prefactor of both expansions.
double log_prefactor(double a, double x) {
  return a * std::log(x) - x - ln_gamma(a);
}

// γ(a,x)/Γ(a) = x^a e^{-x}/Γ(a) * Σ_n x^n / (a (a+1) ... (a+n)).
double lower_series(double a, double x) {
  double denom = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    denom += 1.0;
    term *= x / denom;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * std::exp(log_prefactor(a, x));
    }
  }
  throw NumericError("reg_lower_gamma: series did not converge for a=" +
                     std::to_string(a) + ", x=" + std::to_string(x));
}

// Γ(a,x)/Γ(a) by the modified Lentz evaluation of the Legendre continued
// fraction.
double upper_continued_fraction(double a, double x) {
  constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      return std::exp(log_prefactor(a, x)) * h;
    }
  }
  throw NumericError("reg_upper_gamma: continued fraction did not converge "
                     "for a=" + std::to_string(a) + ", x=" + std::to_string(x));
}

GammaPair incomplete_gamma(double a, double x) {
  require_positive(a, "incomplete gamma shape a");
  if (std::isnan(x) || x < 0.0) {
    throw DomainError("incomplete gamma argument x must be >= 0, got " +
                      std::to_string(x));
  }
  if (x == 0.0) return {0.0, 1.0};
  if (std::isinf(x)) return {1.0, 0.0};
  if (x < a + 1.0) {
    const double p = std::min(1.0, lower_series(a, x));
    return {p, 1.0 - p};
  }
  const double q = std::min(1.0, upper_continued_fraction(a, x));
  return {1.0 - q, q};
}

}  // namespace

double ln_gamma(double a) {
  require_positive(a, "ln_gamma argument");
  if (a >= 15.0) return ln_gamma_stirling(a);
  // Γ(a) = Γ(a + k) / (a (a+1) ... (a+k-1)).
  double log_shift = 0.0;
  double z = a;
  while (z < 15.0) {
    log_shift += std::log(z);
    z += 1.0;
  }
  return ln_gamma_stirling(z) - log_shift;
}

double reg_lower_gamma(double a, double x) { return incomplete_gamma(a, x).lower; }

double reg_upper_gamma(double a, double x) { return incomplete_gamma(a, x).upper; }

double digamma(double x) {
  require_positive(x, "digamma argument");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic expansion, truncation error below 1e-14 for x >= 10.
  const double inv2 = 1.0 / (x * x);
  const double tail =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 -
                              inv2 * (1.0 / 240.0 -
                                      inv2 * (1.0 / 132.0 -
                                              inv2 * (691.0 / 32760.0))))));
  return shift + std::log(x) - 0.5 / x - tail;
}

double log_slope_factor(double n) {
  require_positive(n, "slope factor blocklength");
  return n * std::log(n) - n - ln_gamma(n);
}

}  // namespace covert::special
