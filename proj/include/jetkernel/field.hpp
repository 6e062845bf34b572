#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace jetkernel {

/// Exact coefficient field: the rationals or a prime field F_p.
class FieldSpec {
 public:
  /// Largest admissible modulus; residues multiply without overflow in 64 bits.
  static constexpr std::uint64_t max_prime = (1ULL << 31) - 1;

  FieldSpec() = default;

  static FieldSpec rationals() { return FieldSpec(); }
  /// Throws std::invalid_argument when p is not a prime <= max_prime.
  static FieldSpec prime(std::uint64_t p);

  bool is_rational() const { return p_ == 0; }
  bool is_prime() const { return p_ != 0; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const { return p_; }

  /// "Q" or "F_p".
  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  explicit FieldSpec(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

bool is_prime_number(std::uint64_t n);

/// Throws FieldMismatchError if the two fields differ.
void require_same_field(const FieldSpec& a, const FieldSpec& b);

/// An element of a FieldSpec. Rationals are arbitrary precision; prime-field
/// elements are stored as canonical residues in [0, p).
class Scalar {
 public:
  /// Zero over Q.
  Scalar() = default;
  Scalar(const FieldSpec& field, long value);

  /// Maps a rational into the field; throws ReductionError if p divides the denominator.
  static Scalar from_rational(const FieldSpec& field, const mpq_class& value);
  static Scalar zero(const FieldSpec& field) { return Scalar(field, 0); }
  static Scalar one(const FieldSpec& field) { return Scalar(field, 1); }

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Underlying rational; only valid over Q.
  const mpq_class& rational() const;
  /// Underlying residue; only valid over F_p.
  std::uint64_t residue() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);
  /// Throws std::domain_error on zero.
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "3", "-3/4" over Q; the residue "5" over F_p.
  std::string to_string() const;

 private:
  FieldSpec field_;
  mpq_class q_;
  std::uint64_t r_ = 0;
};

/// Parses "n" or "n/d" with optional sign into the field.
Scalar parse_scalar(const FieldSpec& field, const std::string& text);

}  // namespace jetkernel
