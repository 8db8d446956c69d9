#pragma once

#include <stdexcept>
#include <string>

namespace covert {

// Invalid argument to a formula (negative variance, non-positive threshold, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Both hypotheses produce the same observation law, so no threshold is optimal.
class DegenerateHypothesesError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An iterative routine (quadrature, bracketing, series) failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace covert
