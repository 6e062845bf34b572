#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "jetkernel/field.hpp"

namespace jetkernel {

using ScalarVector = std::vector<Scalar>;

/// Dense exact matrix over a single field, row-major.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(const FieldSpec& field, std::size_t rows, std::size_t cols);

  static ExactMatrix identity(const FieldSpec& field, std::size_t n);
  /// Throws DimensionError on ragged input or mixed fields.
  static ExactMatrix from_rows(const FieldSpec& field, const std::vector<ScalarVector>& rows);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  /// Entry must belong to the matrix's field.
  void set(std::size_t i, std::size_t j, const Scalar& value);

  ScalarVector row(std::size_t i) const;
  ScalarVector operator*(const ScalarVector& v) const;
  ExactMatrix submatrix(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const;

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

  std::string to_string() const;

 private:
  FieldSpec field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Result of exact Gaussian elimination. Pivots are chosen column by column,
/// left to right, taking the first row (in current order) with a nonzero entry.
struct EchelonForm {
  /// Row-reduced (or merely row-echelon) matrix with unit pivots.
  ExactMatrix reduced;
  std::vector<std::size_t> pivot_cols;
  /// Original indices of the rows that supplied each pivot, in pivot order.
  std::vector<std::size_t> pivot_rows;
  /// Product of the pivots before normalization. Equals the determinant of
  /// the original pivot rows restricted to the pivot columns, rows taken in
  /// pivot order.
  Scalar pivot_product;

  std::size_t rank() const { return pivot_cols.size(); }
};

/// With reduced = false only the forward pass runs (enough for rank and minors).
EchelonForm echelonize(const ExactMatrix& m, bool reduced = true);

std::size_t rank(const ExactMatrix& m);

/// Basis of {v : M v = 0}, one vector per free column in increasing column
/// order; each vector has a 1 at its free column and 0 at every other free column.
std::vector<ScalarVector> nullspace(const ExactMatrix& m);

/// Sign of the permutation sorting `order` ascending (entries distinct).
int permutation_sign(std::vector<std::size_t> order);

}  // namespace jetkernel
