#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jetkernel/matrix.hpp"
#include "jetkernel/operators.hpp"

namespace jetkernel {

/// x^exponent in slot `component`.
struct MonomialVector {
  std::size_t component = 0;
  MultiIndex exponent;
  friend bool operator==(const MonomialVector&, const MonomialVector&) = default;
};

/// Ordered monomial-vector basis of {v in k[x]^r : deg v <= degree}:
/// component-major, graded-lex ascending inside each component.
std::vector<MonomialVector> monomial_vector_basis(std::size_t nvars, std::size_t r, std::size_t degree);

/// Exact matrix of D restricted to vectors of degree <= n. The codomain is
/// the span of monomial vectors of degree <= n + max(s(D), 0).
struct TruncationMatrix {
  std::size_t degree = 0;
  std::size_t codomain_degree = 0;
  ExactMatrix matrix;
  std::vector<MonomialVector> domain_basis;
  std::vector<MonomialVector> codomain_basis;

  /// Polynomial vector with the given coordinates in the domain basis.
  PolyVec domain_vector(const ScalarVector& coords, const FieldSpec& field, std::size_t nvars, std::size_t r) const;
};

TruncationMatrix truncation_matrix(const MatrixOperator& op, std::size_t degree);

/// Basis of the degree <= n polynomial kernel, from the reduced echelon form
/// of the truncation matrix (one vector per free column, in column order).
std::vector<PolyVec> kernel_basis(const MatrixOperator& op, std::size_t degree);

struct KernelReport {
  FieldSpec field;
  std::size_t max_degree = 0;
  std::size_t plateau = 3;
  /// dims[n] for n = 0..max_degree.
  std::vector<std::size_t> dims;
  /// bases[n] for n = 0..max_degree (empty when bases were not kept).
  std::vector<std::vector<PolyVec>> bases;
  /// First n from which dims stays at dims[max_degree], set only when that
  /// final run has length >= plateau. A lower bound on the true kernel, never a certificate.
  std::optional<std::size_t> stabilized_at;
  /// Each degree-n kernel lies in the span of the degree-(n+1) kernel.
  bool inclusions_verified = false;
  /// Each basis vector is annihilated exactly.
  bool soundness_verified = false;
  std::string note;
};

KernelReport kernel_scan(const MatrixOperator& op, std::size_t max_degree, std::size_t plateau = 3,
                         bool keep_bases = true);

/// A nonvanishing full-size minor of the truncation matrix at degree n.
struct ZeroKernelCertificate {
  std::size_t degree = 0;
  /// Ascending row indices into the truncation matrix.
  std::vector<std::size_t> row_indices;
  /// Ascending column indices (all domain columns).
  std::vector<std::size_t> col_indices;
  /// Determinant of the selected square submatrix, rows and columns ascending.
  Scalar minor_value;
};

/// Present iff the truncation matrix has full column rank. Rows are the
/// pivot rows of forward elimination.
std::optional<ZeroKernelCertificate> zero_kernel_certificate(const MatrixOperator& op, std::size_t degree);

struct SemicontinuityEntry {
  Scalar t;
  std::size_t dim = 0;
};

struct SemicontinuityReport {
  std::size_t degree = 0;
  std::vector<SemicontinuityEntry> entries;
  /// Minimum over the sample; the generic value on it.
  std::size_t generic_dim = 0;
  /// Sampled t whose dimension exceeds the generic value.
  std::vector<Scalar> special_locus;
  bool constant_family = false;
  /// The special locus misses at least one sampled t.
  bool strict_special_locus = false;
};

/// Kernel dimension at degree n of D0 + t D1 for every sampled t.
SemicontinuityReport semicontinuity_scan(const MatrixOperator& base, const MatrixOperator& direction,
                                         const std::vector<Scalar>& t_values, std::size_t degree);

/// Default t sample {0, ..., 9}.
std::vector<Scalar> default_t_values(const FieldSpec& field);

/// True iff v lies in the span of `basis` (all of degree <= degree, rank r).
bool in_span(const std::vector<PolyVec>& basis, const PolyVec& v, std::size_t degree);

}  // namespace jetkernel
