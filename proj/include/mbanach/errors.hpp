#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mbanach {

// Malformed or out-of-contract input (bad literal, non-finite entry,
// shape mismatch, non-injective index map, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A tolerance or optimizer setting that cannot be honoured.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested construction exists mathematically but has no computable
// route here (bound-only weight where an exact one is required, a
// non-polyhedral dual ball, ...).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Refusal to start work that would exceed the desk-scale budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t estimate = 0)
      : std::runtime_error(what), estimate_(estimate) {}

  std::uint64_t estimate() const noexcept { return estimate_; }

 private:
  std::uint64_t estimate_;
};

}  // namespace mbanach
