#pragma once

#include <stdexcept>
#include <string>

namespace rmtlab {

/// Raised when an input violates a documented precondition (non-finite entry,
/// out-of-domain ensemble parameter, unsorted samples, singular group element).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure detects it cannot deliver a correct result,
/// e.g. a rejection sampler whose envelope is mis-specified.
class DiagnosticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rmtlab
