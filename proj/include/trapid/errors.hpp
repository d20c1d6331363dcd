#pragma once

#include <stdexcept>
#include <string>

namespace trapid {

/// Invalid physical or numerical parameters (out-of-range k, bad window, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integrator or quadrature breakdown: step underflow, loss of 1 - 2m/r > 0.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trapid
