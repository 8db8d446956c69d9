#pragma once

namespace covert::special {

/// Natural log of the complete gamma function for a > 0.
double ln_gamma(double a);

/// Regularized lower incomplete gamma P(a, x) = γ(a, x) / Γ(a).
///
/// Uses the power series for x < a + 1 and a Lentz continued fraction for
/// the upper tail otherwise. P and Q are produced by the same routine, one
/// as the complement of the other, so P + Q == 1 up to a single rounding.
double reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double reg_upper_gamma(double a, double x);

/// Digamma ψ(x) = d/dx ln Γ(x), x > 0.
double digamma(double x);

/// ln(n^n e^{-n} / Γ(n)) for real n > 0. This factor is the low-power slope
/// of the radiometer error curve and appears in every linearized result.
double log_slope_factor(double n);

}  // namespace covert::special
