#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "jetkernel/degree.hpp"
#include "jetkernel/field.hpp"
#include "jetkernel/multi_index.hpp"

namespace jetkernel {

/// Sparse multivariate polynomial over an exact field. Terms are kept in
/// graded-lex order and zero coefficients are never stored.
class Poly {
 public:
  using TermMap = std::map<MultiIndex, Scalar, GrlexLess>;

  Poly() = default;
  /// The zero polynomial.
  Poly(const FieldSpec& field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static Poly constant(const FieldSpec& field, std::size_t nvars, const Scalar& c);
  static Poly constant(const FieldSpec& field, std::size_t nvars, long c);
  static Poly monomial(const FieldSpec& field, const MultiIndex& exponent, const Scalar& c);
  /// x_{var+1}, zero-based variable index.
  static Poly variable(const FieldSpec& field, std::size_t nvars, std::size_t var);

  const FieldSpec& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// True for constants, including zero.
  bool is_constant() const;

  /// Max |I| over stored terms, minus infinity for the zero polynomial.
  Degree degree() const;
  Scalar coeff(const MultiIndex& exponent) const;
  /// Adds c * x^exponent in place.
  void add_term(const MultiIndex& exponent, const Scalar& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Scalar& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  /// x^shift * p.
  Poly shifted(const MultiIndex& shift) const;
  /// p(values[0], ..., values[n-1]); values must share the field, and their
  /// common variable count becomes the result's.
  Poly substitute(std::span<const Poly> values) const;
  /// Coefficientwise map into another field (reduction mod p for Q -> F_p).
  Poly to_field(const FieldSpec& target) const;

  /// Human and DSL readable form, highest terms first, e.g. "x1^2 - 3/4*x2 + 1".
  std::string to_string() const;

 private:
  void check_compatible(const Poly& other) const;

  FieldSpec field_;
  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// The arithmetic kinds of poly_arith.
enum class PolyOp { add, mul, scalar_mul };

/// For scalar_mul, q must be a constant polynomial.
Poly poly_arith(const Poly& p, const Poly& q, PolyOp op);

/// Length-r vector of polynomials sharing a field and variable count.
class PolyVec {
 public:
  PolyVec() = default;
  /// The zero vector of length r.
  PolyVec(const FieldSpec& field, std::size_t nvars, std::size_t r);
  /// Throws DimensionError when entries disagree on field or nvars, or the list is empty.
  explicit PolyVec(std::vector<Poly> entries);

  /// x^exponent in slot `component`, zero elsewhere.
  static PolyVec unit(const FieldSpec& field, std::size_t nvars, std::size_t r, std::size_t component,
                      const MultiIndex& exponent);

  const FieldSpec& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return entries_.size(); }
  const Poly& operator[](std::size_t i) const { return entries_[i]; }
  /// Replacement must match field and nvars.
  void set(std::size_t i, Poly value);
  const std::vector<Poly>& entries() const { return entries_; }

  bool is_zero() const;
  Degree degree() const;

  PolyVec& operator+=(const PolyVec& other);
  PolyVec& operator-=(const PolyVec& other);
  PolyVec& operator*=(const Scalar& c);
  friend PolyVec operator+(PolyVec a, const PolyVec& b) { return a += b; }
  friend PolyVec operator-(PolyVec a, const PolyVec& b) { return a -= b; }
  friend PolyVec operator*(const Scalar& c, PolyVec a) { return a *= c; }
  friend bool operator==(const PolyVec& a, const PolyVec& b) = default;

  PolyVec to_field(const FieldSpec& target) const;
  std::string to_string() const;

 private:
  FieldSpec field_;
  std::size_t nvars_ = 0;
  std::vector<Poly> entries_;
};

}  // namespace jetkernel
