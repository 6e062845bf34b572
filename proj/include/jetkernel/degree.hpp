#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace jetkernel {

/// An integer extended by a minus-infinity sentinel. Used for polynomial
/// degrees, operator orders and degree shifts, where the zero object has no
/// finite value and must never be confused with 0 or -1.
class Degree {
 public:
  constexpr Degree(int value) : finite_(true), value_(value) {}  // NOLINT(google-explicit-constructor)

  static constexpr Degree minus_infinity() { return Degree(); }

  constexpr bool is_finite() const { return finite_; }
  int value() const {
    if (!finite_) throw std::logic_error("value() of -infinity degree");
    return value_;
  }
  /// max(value, 0), with -infinity mapped to 0.
  constexpr int clamped_nonnegative() const { return finite_ && value_ > 0 ? value_ : 0; }

  friend constexpr bool operator==(const Degree& a, const Degree& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (!a.finite_ || !b.finite_) return a.finite_ <=> b.finite_;
    return a.value_ <=> b.value_;
  }
  friend constexpr Degree operator+(const Degree& a, const Degree& b) {
    if (!a.finite_ || !b.finite_) return minus_infinity();
    return Degree(a.value_ + b.value_);
  }

  std::string to_string() const { return finite_ ? std::to_string(value_) : "-inf"; }

 private:
  constexpr Degree() : finite_(false), value_(0) {}
  bool finite_;
  int value_;
};

}  // namespace jetkernel
