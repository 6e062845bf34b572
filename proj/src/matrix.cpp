#include "jetkernel/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "jetkernel/errors.hpp"

namespace jetkernel {

ExactMatrix::ExactMatrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

ExactMatrix ExactMatrix::identity(const FieldSpec& field, std::size_t n) {
  ExactMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = Scalar::one(field);
  return m;
}

ExactMatrix ExactMatrix::from_rows(const FieldSpec& field, const std::vector<ScalarVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  ExactMatrix m(field, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("ragged rows in matrix literal");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void ExactMatrix::set(std::size_t i, std::size_t j, const Scalar& value) {
  require_same_field(field_, value.field());
  if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
  data_[i * cols_ + j] = value;
}

ScalarVector ExactMatrix::row(std::size_t i) const {
  return ScalarVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

ScalarVector ExactMatrix::operator*(const ScalarVector& v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector size mismatch");
  ScalarVector out(rows_, Scalar::zero(field_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& a = at(i, j);
      if (!a.is_zero() && !v[j].is_zero()) out[i] += a * v[j];
    }
  }
  return out;
}

ExactMatrix ExactMatrix::submatrix(const std::vector<std::size_t>& row_idx,
                                   const std::vector<std::size_t>& col_idx) const {
  ExactMatrix m(field_, row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    for (std::size_t j = 0; j < col_idx.size(); ++j) {
      if (row_idx[i] >= rows_ || col_idx[j] >= cols_) throw DimensionError("submatrix index out of range");
      m.data_[i * m.cols_ + j] = at(row_idx[i], col_idx[j]);
    }
  }
  return m;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_; ++i) {
    out << "[";
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << at(i, j).to_string();
    out << "]\n";
  }
  return out.str();
}

EchelonForm echelonize(const ExactMatrix& m, bool reduced) {
  const FieldSpec& field = m.field();
  std::vector<ScalarVector> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = m.row(i);
  std::vector<std::size_t> origin(m.rows());
  for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;

  EchelonForm ef;
  ef.pivot_product = Scalar::one(field);
  std::size_t next = 0;
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
    std::size_t p = next;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[next]);
    std::swap(origin[p], origin[next]);

    ScalarVector& pivot_row = rows[next];
    const Scalar pivot = pivot_row[c];
    ef.pivot_product *= pivot;
    const Scalar inv = pivot.inverse();
    support.clear();
    for (std::size_t k = c; k < m.cols(); ++k) {
      if (!pivot_row[k].is_zero()) {
        if (!inv.is_one()) pivot_row[k] *= inv;
        if (k > c) support.push_back(k);
      }
    }
    const std::size_t first = reduced ? 0 : next + 1;
    for (std::size_t i = first; i < rows.size(); ++i) {
      if (i == next || rows[i][c].is_zero()) continue;
      const Scalar factor = rows[i][c];
      for (std::size_t k : support) rows[i][k] -= factor * pivot_row[k];
      rows[i][c] = Scalar::zero(field);
    }
    ef.pivot_cols.push_back(c);
    ef.pivot_rows.push_back(origin[next]);
    ++next;
  }
  ef.reduced = ExactMatrix::from_rows(field, rows);
  if (rows.empty()) ef.reduced = ExactMatrix(field, 0, m.cols());
  return ef;
}

std::size_t rank(const ExactMatrix& m) { return echelonize(m, false).rank(); }

std::vector<ScalarVector> nullspace(const ExactMatrix& m) {
  const EchelonForm ef = echelonize(m, true);
  const FieldSpec& field = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : ef.pivot_cols) is_pivot[c] = true;

  std::vector<ScalarVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    ScalarVector v(m.cols(), Scalar::zero(field));
    v[f] = Scalar::one(field);
    for (std::size_t r = 0; r < ef.pivot_cols.size(); ++r) {
      const Scalar& entry = ef.reduced.at(r, f);
      if (!entry.is_zero()) v[ef.pivot_cols[r]] = -entry;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

int permutation_sign(std::vector<std::size_t> order) {
  int sign = 1;
  // compress to ranks 0..n-1, then count even cycles
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (auto& o : order) o = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), o) - sorted.begin());
  std::vector<bool> seen(order.size(), false);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = order[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace jetkernel
