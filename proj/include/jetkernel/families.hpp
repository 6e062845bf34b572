#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jetkernel/operators.hpp"

namespace jetkernel {

enum class FamilyMode {
  /// Every t_{I,J,i,j} x^J d^[I] with |I| <= N, |J| <= M.
  Universal,
  /// Constant coefficients: J = 0 only. Contains the identity.
  ConstantCoefficient,
  /// Fixed nonzero order-0 diagonal a_i, free strictly lower entries, zero above.
  TriangularUnit,
  /// One variable, diagonal fixed to d^[1], strictly lower entries free
  /// except that their order-0 coefficient vanishes.
  ZeroConstantTermTriangular,
  /// Base point diag(d^[1]) plus a full perturbation whose order-0
  /// coefficients all vanish; every member kills the constant vectors.
  ZeroConstantTermPerturbation,
  /// nvars >= 2, a_0 = 0 and a_I = 0 whenever I_1 != 0.
  SubspaceL,
};

std::string to_string(FamilyMode mode);
/// Accepts the names produced by to_string (case-insensitive); throws std::invalid_argument.
FamilyMode parse_family_mode(const std::string& text);

/// One free coefficient: the x^monomial part of the d^[derivative] coefficient in entry (row, col).
struct FamilyParameter {
  std::size_t row = 0;
  std::size_t col = 0;
  MultiIndex derivative;
  MultiIndex monomial;
  friend bool operator==(const FamilyParameter&, const FamilyParameter&) = default;
};

class FamilySpec {
 public:
  /// Validates bounds and mode requirements; throws DimensionError / InvariantError.
  FamilySpec(FamilyMode mode, std::size_t r, std::size_t nvars, std::size_t order, std::size_t coef_degree,
             std::vector<Poly> diagonal = {});

  FamilyMode mode() const { return mode_; }
  std::size_t rank() const { return r_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t order() const { return order_; }
  std::size_t coef_degree() const { return coef_degree_; }
  const std::vector<Poly>& diagonal() const { return diagonal_; }

  /// Free parameters in enumeration order (row, col, derivative, monomial; graded-lex inside).
  const std::vector<FamilyParameter>& parameters() const { return parameters_; }
  /// K.
  std::size_t parameter_count() const { return parameters_.size(); }
  /// Whether the mode's vanishing pattern leaves this coefficient free.
  bool allows(const FamilyParameter& p) const;
  /// The member at c = 0.
  MatrixOperator base_point(const FieldSpec& field) const;

 private:
  FamilyMode mode_;
  std::size_t r_, nvars_, order_, coef_degree_;
  std::vector<Poly> diagonal_;
  std::vector<FamilyParameter> parameters_;
};

FamilySpec universal_family(std::size_t r, std::size_t nvars, std::size_t order, std::size_t coef_degree);
FamilySpec constant_coefficient_family(std::size_t r, std::size_t nvars, std::size_t order);
/// Throws DimensionError for nvars < 2.
FamilySpec subspace_L_family(std::size_t r, std::size_t nvars, std::size_t order, std::size_t coef_degree);

/// Closed-form K for Universal mode: r^2 C(n+N, n) C(n+M, n).
std::size_t universal_parameter_count(std::size_t r, std::size_t nvars, std::size_t order, std::size_t coef_degree);

/// Seeded generator with platform-independent output: mt19937_64 keyed by a
/// splitmix64 hash of (seed, index), with rejection-sampled bounded draws
/// (std distributions are implementation-defined).
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint64_t index);
  std::uint64_t next();
  /// Uniform integer in [-bound, bound].
  long uniform_symmetric(long bound);
  /// Uniform integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

struct SamplePoint {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  long bound = 10;
  /// values[k] belongs to spec.parameters()[k].
  std::vector<long> values;
};

/// Uniform integers in [-bound, bound], regenerated identically from (seed, index).
SamplePoint sample_point(const FamilySpec& spec, std::uint64_t seed, std::uint64_t index, long bound = 10);
/// Adds an independent {-1, 0, +1} jitter to every coordinate.
SamplePoint jitter(const SamplePoint& point, std::uint64_t jitter_seed);

/// Base point plus sum_k values[k] x^J d^[I] in the parameter's entry.
/// Throws InvariantError when the value vector does not fit the spec.
MatrixOperator instantiate(const FamilySpec& spec, const SamplePoint& point,
                           const FieldSpec& field = FieldSpec::rationals());

/// Whether op lies in the mode's affine family (pattern and base point).
bool satisfies_pattern(const FamilySpec& spec, const MatrixOperator& op);

using LowerEntries = std::map<std::pair<std::size_t, std::size_t>, ScalarOperator>;

/// Lower-triangular operator with diagonal multiplication by nonzero
/// polynomials; optional strictly lower entries keyed by (row, col), row > col.
MatrixOperator triangular_witness(std::size_t r, std::size_t nvars, const std::vector<Poly>& diagonal,
                                  const LowerEntries& strictly_lower = {});

/// One-variable lower-triangular operator with d^[1] on the diagonal. Each
/// supplied strictly lower entry must have a zero order-0 coefficient.
MatrixOperator constant_kernel_witness(std::size_t r, const LowerEntries& strictly_lower = {},
                                       const FieldSpec& field = FieldSpec::rationals());

/// Unitriangular polynomial matrix I + L (L strictly lower) with its exact inverse.
InvertiblePolyMatrix unitriangular(const FieldSpec& field, std::size_t nvars, std::size_t r,
                                   const std::map<std::pair<std::size_t, std::size_t>, Poly>& strictly_lower);
/// Seeded unitriangular witness with strictly lower entries of degree <= max_degree.
InvertiblePolyMatrix sample_unitriangular(std::size_t nvars, std::size_t r, std::size_t max_degree,
                                          std::uint64_t seed, std::uint64_t index, long bound = 3);

/// x_var -> x_var + c.
PolyAutomorphism translation(const FieldSpec& field, std::size_t nvars, std::size_t var, const Scalar& c);
/// x_var -> c * x_var, c != 0.
PolyAutomorphism scaling(const FieldSpec& field, std::size_t nvars, std::size_t var, const Scalar& c);
/// De Jonquieres map x_var -> x_var + p, where p does not involve x_var.
PolyAutomorphism elementary_automorphism(std::size_t var, const Poly& p);
/// Swap of two variables.
PolyAutomorphism swap_variables(const FieldSpec& field, std::size_t nvars, std::size_t a, std::size_t b);

MatrixOperator gl_translate(const MatrixOperator& op, const InvertiblePolyMatrix& a);
MatrixOperator gl_translate(const MatrixOperator& op, const PolyAutomorphism& g);

/// Entrywise reduction of Hasse coefficients mod p; throws ReductionError naming the coefficient.
MatrixOperator reduce_mod_p(const MatrixOperator& op, std::uint64_t p);
/// The candidates that divide some coefficient denominator of op.
std::vector<std::uint64_t> bad_primes(const MatrixOperator& op, std::span<const std::uint64_t> candidates);

}  // namespace jetkernel
