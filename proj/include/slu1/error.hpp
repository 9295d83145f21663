#pragma once

#include <stdexcept>
#include <string>

namespace slu1 {

/// Bad input: violated precondition, malformed config, unsupported option.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to meet its contract (divergence, instability, ...).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace slu1
