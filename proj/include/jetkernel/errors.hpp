#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetkernel {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes, variable counts or ranks that do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Operands living over different coefficient fields.
class FieldMismatchError : public Error {
 public:
  using Error::Error;
};

/// Classical <-> Hasse basis conversion impossible in the given characteristic.
class ConversionError : public Error {
 public:
  using Error::Error;
};

/// Reduction of a rational value modulo p hit a denominator divisible by p.
class ReductionError : public Error {
 public:
  using Error::Error;
};

/// recover_coefficients could not express an action as an operator of the requested order.
class ReconstructionError : public Error {
 public:
  using Error::Error;
};

/// A value violates a structural invariant (non-inverse witnesses, vanishing patterns, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace jetkernel
