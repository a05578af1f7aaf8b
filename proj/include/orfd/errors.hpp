#pragma once

#include <stdexcept>
#include <string>

namespace orfd {

/// Input or configuration that violates a precondition (CLI exit code 1).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Singular factorization, eigensolver non-convergence and similar (CLI exit code 2).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orfd
