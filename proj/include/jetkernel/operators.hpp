#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetkernel/degree.hpp"
#include "jetkernel/poly.hpp"

namespace jetkernel {

/// Scalar differential operator sum_I a_I(x) * d^[I] written against the
/// Hasse (divided-power) derivatives d^[I] x^J = C(J, I) x^(J - I).
class ScalarOperator {
 public:
  using TermMap = std::map<MultiIndex, Poly, GrlexLess>;

  ScalarOperator() = default;
  /// The zero operator.
  ScalarOperator(const FieldSpec& field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static ScalarOperator identity(const FieldSpec& field, std::size_t nvars);
  /// Order-zero operator f -> p * f.
  static ScalarOperator multiplication(const Poly& p);
  /// d^[index] with unit coefficient.
  static ScalarOperator hasse(const FieldSpec& field, const MultiIndex& index);

  const FieldSpec& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient a_I (zero polynomial when absent).
  Poly coeff(const MultiIndex& index) const;
  void add_term(const MultiIndex& index, const Poly& coefficient);

  /// max |I| over stored terms; minus infinity for the zero operator.
  Degree order() const;
  /// max (deg a_I - |I|); minus infinity for the zero operator.
  Degree shift() const;

  ScalarOperator& operator+=(const ScalarOperator& other);
  ScalarOperator& operator-=(const ScalarOperator& other);
  ScalarOperator& operator*=(const Scalar& c);
  friend ScalarOperator operator+(ScalarOperator a, const ScalarOperator& b) { return a += b; }
  friend ScalarOperator operator-(ScalarOperator a, const ScalarOperator& b) { return a -= b; }
  friend ScalarOperator operator*(const Scalar& c, ScalarOperator a) { return a *= c; }
  friend bool operator==(const ScalarOperator& a, const ScalarOperator& b);

  ScalarOperator to_field(const FieldSpec& target) const;

  /// DSL form, e.g. "x1^2*h(1,2) + 3"; parse_operator reads it back.
  std::string to_string() const;

 private:
  FieldSpec field_;
  std::size_t nvars_ = 0;
  TermMap terms_;
};

/// d^[index] applied to p.
Poly hasse_derivative(const Poly& p, const MultiIndex& index);
Poly hasse_apply(const ScalarOperator& op, const Poly& p);
/// a o b as operators (Hasse-Leibniz rule).
ScalarOperator compose(const ScalarOperator& a, const ScalarOperator& b);

/// r x r matrix of scalar operators acting on k[x]^r.
class MatrixOperator {
 public:
  MatrixOperator() = default;
  /// The zero operator.
  MatrixOperator(const FieldSpec& field, std::size_t nvars, std::size_t r);

  static MatrixOperator identity(const FieldSpec& field, std::size_t nvars, std::size_t r);
  /// Throws DimensionError unless the grid is square with uniform field/nvars.
  static MatrixOperator from_entries(const std::vector<std::vector<ScalarOperator>>& grid);

  const FieldSpec& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t rank() const { return r_; }

  const ScalarOperator& at(std::size_t i, std::size_t j) const { return entries_[i * r_ + j]; }
  void set(std::size_t i, std::size_t j, ScalarOperator entry);

  bool is_zero() const;
  /// N(D): max entry order.
  Degree order() const;
  /// s(D): max entry shift; bounds output degree growth by max(s(D), 0).
  Degree shift() const;

  MatrixOperator& operator+=(const MatrixOperator& other);
  MatrixOperator& operator-=(const MatrixOperator& other);
  MatrixOperator& operator*=(const Scalar& c);
  friend MatrixOperator operator+(MatrixOperator a, const MatrixOperator& b) { return a += b; }
  friend MatrixOperator operator-(MatrixOperator a, const MatrixOperator& b) { return a -= b; }
  friend MatrixOperator operator*(const Scalar& c, MatrixOperator a) { return a *= c; }
  friend bool operator==(const MatrixOperator& a, const MatrixOperator& b) = default;

  MatrixOperator to_field(const FieldSpec& target) const;
  std::string to_string() const;

 private:
  void check_compatible(const MatrixOperator& other) const;

  FieldSpec field_;
  std::size_t nvars_ = 0;
  std::size_t r_ = 0;
  std::vector<ScalarOperator> entries_;
};

PolyVec op_apply(const MatrixOperator& op, const PolyVec& v);
/// (d1 o d2)(v) = d1(d2(v)).
MatrixOperator op_compose(const MatrixOperator& d1, const MatrixOperator& d2);

/// Classical input sum_I a_I d^I mapped to the Hasse basis (a_I * I!) d^[I].
/// Throws ConversionError naming the first index whose factorial vanishes in the field.
ScalarOperator classical_to_hasse(const FieldSpec& field, std::size_t nvars,
                                  const std::map<MultiIndex, Poly, GrlexLess>& classical);
std::map<MultiIndex, Poly, GrlexLess> hasse_to_classical(const ScalarOperator& op);

using ActionOracle = std::function<PolyVec(const PolyVec&)>;

/// Rebuilds the operator of order <= max_order agreeing with a linear action.
/// Coefficients are read off from the images of x^J e_j, |J| <= max_order, by
/// increasing |J|. The result is then checked against the oracle on every
/// monomial vector of degree <= check_degree (default max_order + 2); a
/// mismatch throws ReconstructionError. The oracle is not retained.
MatrixOperator recover_coefficients(const ActionOracle& action, const FieldSpec& field, std::size_t r,
                                    std::size_t nvars, std::size_t max_order,
                                    std::optional<std::size_t> check_degree = std::nullopt);

/// Square matrix of polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  /// Zero matrix.
  PolyMatrix(const FieldSpec& field, std::size_t nvars, std::size_t r);
  static PolyMatrix identity(const FieldSpec& field, std::size_t nvars, std::size_t r);
  static PolyMatrix from_rows(const std::vector<std::vector<Poly>>& rows);

  const FieldSpec& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t rank() const { return r_; }
  const Poly& at(std::size_t i, std::size_t j) const { return entries_[i * r_ + j]; }
  void set(std::size_t i, std::size_t j, Poly p);
  Degree degree() const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) = default;
  PolyVec apply(const PolyVec& v) const;

 private:
  FieldSpec field_;
  std::size_t nvars_ = 0;
  std::size_t r_ = 0;
  std::vector<Poly> entries_;
};

/// Element of GL_r(k[x]) carried together with its inverse.
class InvertiblePolyMatrix {
 public:
  /// Throws InvariantError unless forward * inverse = inverse * forward = identity.
  InvertiblePolyMatrix(PolyMatrix forward, PolyMatrix inverse);

  static InvertiblePolyMatrix identity(const FieldSpec& field, std::size_t nvars, std::size_t r);

  const PolyMatrix& forward() const { return forward_; }
  const PolyMatrix& inverse() const { return inverse_; }
  /// Max entry degree of the inverse (d_A).
  int inverse_degree() const { return inverse_.degree().clamped_nonnegative(); }

  /// (this * other), with inverse other^-1 * this^-1.
  InvertiblePolyMatrix operator*(const InvertiblePolyMatrix& other) const;

 private:
  PolyMatrix forward_;
  PolyMatrix inverse_;
};

/// Automorphism of k[x_1..x_n] given by x_i -> phi_i(x), with inverse x_i -> psi_i(x).
class PolyAutomorphism {
 public:
  /// Throws InvariantError unless phi(psi(x)) = x and psi(phi(x)) = x.
  PolyAutomorphism(std::vector<Poly> forward, std::vector<Poly> inverse);

  static PolyAutomorphism identity(const FieldSpec& field, std::size_t nvars);

  const std::vector<Poly>& forward() const { return forward_; }
  const std::vector<Poly>& inverse() const { return inverse_; }
  const FieldSpec& field() const { return forward_.front().field(); }
  std::size_t nvars() const { return forward_.size(); }

  /// f -> f(phi(x)).
  Poly pull(const Poly& f) const;
  /// f -> f(psi(x)).
  Poly push(const Poly& f) const;

  /// Forward map phi_next(phi_this(x)). Its operator pullback is the pullback
  /// by *this followed by the pullback by next.
  PolyAutomorphism then(const PolyAutomorphism& next) const;

 private:
  std::vector<Poly> forward_;
  std::vector<Poly> inverse_;
};

/// v -> A^-1 D (A v), re-expressed as an operator of the same order.
MatrixOperator conjugate_glr(const MatrixOperator& op, const InvertiblePolyMatrix& a);

/// f -> (D(f o phi)) o psi, re-expressed as an operator. Characteristic 0 only.
MatrixOperator pullback_automorphism(const MatrixOperator& op, const PolyAutomorphism& g);

}  // namespace jetkernel
