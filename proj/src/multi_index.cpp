#include "jetkernel/multi_index.hpp"

#include <algorithm>
#include <numeric>

#include "jetkernel/errors.hpp"

namespace jetkernel {

namespace {

void check_lengths(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) {
    throw DimensionError("multi-index length mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

void enumerate_degree(std::size_t var, std::size_t remaining, std::vector<MultiIndex::value_type>& cur,
                      std::vector<MultiIndex>& out) {
  if (var + 1 == cur.size()) {
    cur[var] = static_cast<MultiIndex::value_type>(remaining);
    out.emplace_back(cur);
    return;
  }
  for (std::size_t k = 0; k <= remaining; ++k) {
    cur[var] = static_cast<MultiIndex::value_type>(k);
    enumerate_degree(var + 1, remaining - k, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

MultiIndex MultiIndex::unit(std::size_t nvars, std::size_t var, value_type power) {
  if (var >= nvars) throw DimensionError("variable index out of range");
  MultiIndex m(nvars);
  m.e_[var] = power;
  return m;
}

std::size_t MultiIndex::total() const {
  return std::accumulate(e_.begin(), e_.end(), std::size_t{0});
}

bool MultiIndex::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](value_type v) { return v == 0; });
}

bool MultiIndex::divides(const MultiIndex& other) const {
  check_lengths(*this, other);
  for (std::size_t k = 0; k < e_.size(); ++k) {
    if (e_[k] > other.e_[k]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  check_lengths(*this, other);
  MultiIndex r = *this;
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] += other.e_[k];
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!other.divides(*this)) throw DimensionError("multi-index subtraction out of range");
  MultiIndex r = *this;
  for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] -= other.e_[k];
  return r;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < e_.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(e_[k]);
  }
  return s + ")";
}

bool GrlexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const std::size_t da = a.total(), db = b.total();
  if (da != db) return da < db;
  return a.exponents() < b.exponents();
}

std::vector<MultiIndex> indices_of_degree(std::size_t nvars, std::size_t degree) {
  std::vector<MultiIndex> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  std::vector<MultiIndex::value_type> cur(nvars, 0);
  enumerate_degree(0, degree, cur, out);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

std::vector<MultiIndex> indices_up_to(std::size_t nvars, std::size_t max_degree) {
  std::vector<MultiIndex> out;
  for (std::size_t d = 0; d <= max_degree; ++d) {
    auto layer = indices_of_degree(nvars, d);
    out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
  }
  return out;
}

mpz_class binomial(std::size_t n, std::size_t k) {
  mpz_class r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Scalar multi_binomial(const FieldSpec& field, const MultiIndex& upper, const MultiIndex& lower) {
  check_lengths(upper, lower);
  mpz_class prod = 1;
  for (std::size_t k = 0; k < upper.size(); ++k) {
    if (lower[k] > upper[k]) return Scalar::zero(field);
    if (lower[k] != 0 && lower[k] != upper[k]) prod *= binomial(upper[k], lower[k]);
  }
  return Scalar::from_rational(field, mpq_class(prod));
}

mpz_class multi_factorial(const MultiIndex& index) {
  mpz_class prod = 1;
  for (std::size_t k = 0; k < index.size(); ++k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), index[k]);
    prod *= f;
  }
  return prod;
}

}  // namespace jetkernel
