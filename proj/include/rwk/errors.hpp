#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rwk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A finite sequence prefix was indexed past its end. Carries the minimum
/// length that would have been sufficient.
class PrefixTooShort : public Error {
 public:
  explicit PrefixTooShort(std::size_t required)
      : Error("sequence prefix too short: need length >= " + std::to_string(required)),
        required_length_(required) {}

  std::size_t required_length() const noexcept { return required_length_; }

 private:
  std::size_t required_length_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or search would exceed a configured cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed; indicates corrupted input structures or a bug,
/// never a property of valid input.
class InvariantBreach : public Error {
 public:
  using Error::Error;
};

/// The matrix admits no integral x with A x equal to a constant vector.
class ConstantImageUnsolvable : public Error {
 public:
  using Error::Error;
};

}  // namespace rwk
