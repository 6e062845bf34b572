#include "jetkernel/operators.hpp"

#include <algorithm>
#include <sstream>

#include "jetkernel/errors.hpp"

namespace jetkernel {

namespace {

/// All L with L <= upper componentwise.
std::vector<MultiIndex> sub_indices(const MultiIndex& upper) {
  std::vector<MultiIndex> out{MultiIndex(upper.size())};
  for (std::size_t k = 0; k < upper.size(); ++k) {
    const std::size_t count = out.size();
    for (std::size_t idx = 0; idx < count; ++idx) {
      for (MultiIndex::value_type e = 1; e <= upper[k]; ++e) {
        MultiIndex m = out[idx];
        m[k] = e;
        out.push_back(std::move(m));
      }
    }
  }
  return out;
}

std::string hasse_string(const MultiIndex& index) {
  std::string s;
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += "h(" + std::to_string(k + 1) + "," + std::to_string(index[k]) + ")";
  }
  return s;
}

void check_operator_input(const FieldSpec& field, std::size_t nvars, const Poly& p) {
  require_same_field(field, p.field());
  if (p.nvars() != nvars) throw DimensionError("operator and polynomial disagree on nvars");
}

}  // namespace

// ---------------------------------------------------------------- ScalarOperator

ScalarOperator ScalarOperator::identity(const FieldSpec& field, std::size_t nvars) {
  return multiplication(Poly::constant(field, nvars, 1));
}

ScalarOperator ScalarOperator::multiplication(const Poly& p) {
  ScalarOperator op(p.field(), p.nvars());
  op.add_term(MultiIndex(p.nvars()), p);
  return op;
}

ScalarOperator ScalarOperator::hasse(const FieldSpec& field, const MultiIndex& index) {
  ScalarOperator op(field, index.size());
  op.add_term(index, Poly::constant(field, index.size(), 1));
  return op;
}

Poly ScalarOperator::coeff(const MultiIndex& index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Poly(field_, nvars_) : it->second;
}

void ScalarOperator::add_term(const MultiIndex& index, const Poly& coefficient) {
  if (index.size() != nvars_) throw DimensionError("derivative index length does not match nvars");
  check_operator_input(field_, nvars_, coefficient);
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(index, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Degree ScalarOperator::order() const {
  if (terms_.empty()) return Degree::minus_infinity();
  return Degree(static_cast<int>(terms_.rbegin()->first.total()));
}

Degree ScalarOperator::shift() const {
  Degree s = Degree::minus_infinity();
  for (const auto& [index, a] : terms_) {
    s = std::max(s, Degree(a.degree().value() - static_cast<int>(index.total())));
  }
  return s;
}

ScalarOperator& ScalarOperator::operator+=(const ScalarOperator& other) {
  require_same_field(field_, other.field_);
  if (nvars_ != other.nvars_) throw DimensionError("operator nvars mismatch");
  for (const auto& [index, a] : other.terms_) add_term(index, a);
  return *this;
}

ScalarOperator& ScalarOperator::operator-=(const ScalarOperator& other) {
  require_same_field(field_, other.field_);
  if (nvars_ != other.nvars_) throw DimensionError("operator nvars mismatch");
  for (const auto& [index, a] : other.terms_) add_term(index, -a);
  return *this;
}

ScalarOperator& ScalarOperator::operator*=(const Scalar& c) {
  require_same_field(field_, c.field());
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [index, a] : terms_) a *= c;
  return *this;
}

bool operator==(const ScalarOperator& a, const ScalarOperator& b) {
  return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

ScalarOperator ScalarOperator::to_field(const FieldSpec& target) const {
  ScalarOperator r(target, nvars_);
  for (const auto& [index, a] : terms_) {
    try {
      r.add_term(index, a.to_field(target));
    } catch (const ReductionError& e) {
      throw ReductionError(std::string(e.what()) + " in the d^[" + index.to_string() + "] coefficient");
    }
  }
  return r;
}

std::string ScalarOperator::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [index, a] = *it;
    const std::string h = hasse_string(index);
    std::string coef;
    bool negative = false;
    if (a.term_count() == 1) {
      const auto& [mono, c] = *a.terms().begin();
      Poly single = a;
      if (field_.is_rational() && sgn(c.rational()) < 0) {
        negative = true;
        single = -a;
      }
      coef = single.to_string();
    } else {
      coef = "(" + a.to_string() + ")";
    }
    out << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    if (h.empty()) {
      out << coef;
    } else if (coef == "1") {
      out << h;
    } else {
      out << coef << "*" << h;
    }
  }
  return out.str();
}

Poly hasse_derivative(const Poly& p, const MultiIndex& index) {
  if (index.size() != p.nvars()) throw DimensionError("derivative index length does not match nvars");
  Poly out(p.field(), p.nvars());
  for (const auto& [mono, c] : p.terms()) {
    if (!index.divides(mono)) continue;
    out.add_term(mono - index, c * multi_binomial(p.field(), mono, index));
  }
  return out;
}

Poly hasse_apply(const ScalarOperator& op, const Poly& p) {
  check_operator_input(op.field(), op.nvars(), p);
  Poly out(p.field(), p.nvars());
  for (const auto& [index, a] : op.terms()) {
    Poly d = hasse_derivative(p, index);
    if (!d.is_zero()) out += a * d;
  }
  return out;
}

ScalarOperator compose(const ScalarOperator& a, const ScalarOperator& b) {
  require_same_field(a.field(), b.field());
  if (a.nvars() != b.nvars()) throw DimensionError("operator nvars mismatch");
  const FieldSpec& field = a.field();
  ScalarOperator out(field, a.nvars());
  // a_I d^[I] o b_K d^[K] = sum_{L <= I} a_I d^[L](b_K) C(I-L+K, K) d^[I-L+K]
  for (const auto& [i_index, a_coef] : a.terms()) {
    const auto lowers = sub_indices(i_index);
    for (const auto& [k_index, b_coef] : b.terms()) {
      for (const auto& l_index : lowers) {
        Poly db = hasse_derivative(b_coef, l_index);
        if (db.is_zero()) continue;
        const MultiIndex rest = i_index - l_index;
        const MultiIndex total = rest + k_index;
        const Scalar c = multi_binomial(field, total, k_index);
        if (c.is_zero()) continue;
        out.add_term(total, (a_coef * db) * c);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- MatrixOperator

MatrixOperator::MatrixOperator(const FieldSpec& field, std::size_t nvars, std::size_t r)
    : field_(field), nvars_(nvars), r_(r), entries_(r * r, ScalarOperator(field, nvars)) {
  if (r == 0) throw DimensionError("operator rank must be at least 1");
}

MatrixOperator MatrixOperator::identity(const FieldSpec& field, std::size_t nvars, std::size_t r) {
  MatrixOperator op(field, nvars, r);
  for (std::size_t i = 0; i < r; ++i) op.entries_[i * r + i] = ScalarOperator::identity(field, nvars);
  return op;
}

MatrixOperator MatrixOperator::from_entries(const std::vector<std::vector<ScalarOperator>>& grid) {
  if (grid.empty() || grid[0].empty()) throw DimensionError("empty operator grid");
  const std::size_t r = grid.size();
  MatrixOperator op(grid[0][0].field(), grid[0][0].nvars(), r);
  for (std::size_t i = 0; i < r; ++i) {
    if (grid[i].size() != r) throw DimensionError("operator grid must be square");
    for (std::size_t j = 0; j < r; ++j) op.set(i, j, grid[i][j]);
  }
  return op;
}

void MatrixOperator::set(std::size_t i, std::size_t j, ScalarOperator entry) {
  if (i >= r_ || j >= r_) throw DimensionError("operator entry out of range");
  require_same_field(field_, entry.field());
  if (entry.nvars() != nvars_) throw DimensionError("operator entry nvars mismatch");
  entries_[i * r_ + j] = std::move(entry);
}

bool MatrixOperator::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const ScalarOperator& e) { return e.is_zero(); });
}

Degree MatrixOperator::order() const {
  Degree d = Degree::minus_infinity();
  for (const auto& e : entries_) d = std::max(d, e.order());
  return d;
}

Degree MatrixOperator::shift() const {
  Degree d = Degree::minus_infinity();
  for (const auto& e : entries_) d = std::max(d, e.shift());
  return d;
}

void MatrixOperator::check_compatible(const MatrixOperator& other) const {
  require_same_field(field_, other.field_);
  if (nvars_ != other.nvars_ || r_ != other.r_) throw DimensionError("operator shape mismatch");
}

MatrixOperator& MatrixOperator::operator+=(const MatrixOperator& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

MatrixOperator& MatrixOperator::operator-=(const MatrixOperator& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

MatrixOperator& MatrixOperator::operator*=(const Scalar& c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

MatrixOperator MatrixOperator::to_field(const FieldSpec& target) const {
  MatrixOperator out(target, nvars_, r_);
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < r_; ++j) {
      try {
        out.entries_[i * r_ + j] = at(i, j).to_field(target);
      } catch (const ReductionError& e) {
        throw ReductionError(std::string(e.what()) + ", entry (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ")");
      }
    }
  }
  return out;
}

std::string MatrixOperator::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < r_; ++i) {
    s += "[ ";
    for (std::size_t j = 0; j < r_; ++j) s += (j ? " , " : "") + at(i, j).to_string();
    s += " ]\n";
  }
  return s;
}

PolyVec op_apply(const MatrixOperator& op, const PolyVec& v) {
  if (v.size() != op.rank()) throw DimensionError("operator rank does not match vector length");
  require_same_field(op.field(), v.field());
  if (v.nvars() != op.nvars()) throw DimensionError("operator and vector disagree on nvars");
  PolyVec out(op.field(), op.nvars(), op.rank());
  for (std::size_t i = 0; i < op.rank(); ++i) {
    Poly acc(op.field(), op.nvars());
    for (std::size_t j = 0; j < op.rank(); ++j) {
      if (op.at(i, j).is_zero() || v[j].is_zero()) continue;
      acc += hasse_apply(op.at(i, j), v[j]);
    }
    out.set(i, std::move(acc));
  }
  return out;
}

MatrixOperator op_compose(const MatrixOperator& d1, const MatrixOperator& d2) {
  require_same_field(d1.field(), d2.field());
  if (d1.nvars() != d2.nvars() || d1.rank() != d2.rank()) throw DimensionError("operator shape mismatch");
  const std::size_t r = d1.rank();
  MatrixOperator out(d1.field(), d1.nvars(), r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      ScalarOperator acc(d1.field(), d1.nvars());
      for (std::size_t j = 0; j < r; ++j) {
        if (d1.at(i, j).is_zero() || d2.at(j, k).is_zero()) continue;
        acc += compose(d1.at(i, j), d2.at(j, k));
      }
      out.set(i, k, std::move(acc));
    }
  }
  return out;
}

ScalarOperator classical_to_hasse(const FieldSpec& field, std::size_t nvars,
                                  const std::map<MultiIndex, Poly, GrlexLess>& classical) {
  ScalarOperator out(field, nvars);
  for (const auto& [index, a] : classical) {
    const Scalar f = Scalar::from_rational(field, mpq_class(multi_factorial(index)));
    if (f.is_zero()) {
      throw ConversionError("classical derivative " + index.to_string() + " has factorial divisible by " +
                            std::to_string(field.characteristic()));
    }
    out.add_term(index, a * f);
  }
  return out;
}

std::map<MultiIndex, Poly, GrlexLess> hasse_to_classical(const ScalarOperator& op) {
  std::map<MultiIndex, Poly, GrlexLess> out;
  for (const auto& [index, a] : op.terms()) {
    const Scalar f = Scalar::from_rational(op.field(), mpq_class(multi_factorial(index)));
    if (f.is_zero()) {
      throw ConversionError("Hasse derivative " + index.to_string() + " has no classical form in characteristic " +
                            std::to_string(op.field().characteristic()));
    }
    out.emplace(index, a * f.inverse());
  }
  return out;
}

MatrixOperator recover_coefficients(const ActionOracle& action, const FieldSpec& field, std::size_t r,
                                    std::size_t nvars, std::size_t max_order,
                                    std::optional<std::size_t> check_degree) {
  MatrixOperator out(field, nvars, r);
  const auto checked = [&](const PolyVec& input) {
    PolyVec image = action(input);
    if (image.size() != r || image.nvars() != nvars || !(image.field() == field)) {
      throw ReconstructionError("oracle returned a vector of the wrong shape");
    }
    return image;
  };

  // a_J = action(x^J e_j) - (sum over already recovered I < J), by increasing |J|
  const auto monomials = indices_up_to(nvars, max_order);
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<ScalarOperator> column(r, ScalarOperator(field, nvars));
    for (const auto& mono : monomials) {
      const PolyVec image = checked(PolyVec::unit(field, nvars, r, j, mono));
      const Poly xj = Poly::monomial(field, mono, Scalar::one(field));
      for (std::size_t i = 0; i < r; ++i) {
        column[i].add_term(mono, image[i] - hasse_apply(column[i], xj));
      }
    }
    for (std::size_t i = 0; i < r; ++i) out.set(i, j, std::move(column[i]));
  }

  const std::size_t limit = check_degree.value_or(max_order + 2);
  for (std::size_t d = max_order + 1; d <= limit; ++d) {
    for (const auto& mono : indices_of_degree(nvars, d)) {
      for (std::size_t j = 0; j < r; ++j) {
        const PolyVec input = PolyVec::unit(field, nvars, r, j, mono);
        if (!(checked(input) == op_apply(out, input))) {
          throw ReconstructionError("not an operator of order <= " + std::to_string(max_order) +
                                    ": residual on x^" + mono.to_string() + " e_" + std::to_string(j + 1));
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(const FieldSpec& field, std::size_t nvars, std::size_t r)
    : field_(field), nvars_(nvars), r_(r), entries_(r * r, Poly(field, nvars)) {}

PolyMatrix PolyMatrix::identity(const FieldSpec& field, std::size_t nvars, std::size_t r) {
  PolyMatrix m(field, nvars, r);
  for (std::size_t i = 0; i < r; ++i) m.entries_[i * r + i] = Poly::constant(field, nvars, 1);
  return m;
}

PolyMatrix PolyMatrix::from_rows(const std::vector<std::vector<Poly>>& rows) {
  if (rows.empty() || rows[0].empty()) throw DimensionError("empty polynomial matrix");
  PolyMatrix m(rows[0][0].field(), rows[0][0].nvars(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw DimensionError("polynomial matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void PolyMatrix::set(std::size_t i, std::size_t j, Poly p) {
  if (i >= r_ || j >= r_) throw DimensionError("matrix entry out of range");
  check_operator_input(field_, nvars_, p);
  entries_[i * r_ + j] = std::move(p);
}

Degree PolyMatrix::degree() const {
  Degree d = Degree::minus_infinity();
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return d;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  require_same_field(a.field_, b.field_);
  if (a.r_ != b.r_ || a.nvars_ != b.nvars_) throw DimensionError("polynomial matrix shape mismatch");
  PolyMatrix out(a.field_, a.nvars_, a.r_);
  for (std::size_t i = 0; i < a.r_; ++i) {
    for (std::size_t k = 0; k < a.r_; ++k) {
      Poly acc(a.field_, a.nvars_);
      for (std::size_t j = 0; j < a.r_; ++j) acc += a.at(i, j) * b.at(j, k);
      out.entries_[i * a.r_ + k] = std::move(acc);
    }
  }
  return out;
}

PolyVec PolyMatrix::apply(const PolyVec& v) const {
  if (v.size() != r_) throw DimensionError("matrix rank does not match vector length");
  PolyVec out(field_, nvars_, r_);
  for (std::size_t i = 0; i < r_; ++i) {
    Poly acc(field_, nvars_);
    for (std::size_t j = 0; j < r_; ++j) {
      if (!at(i, j).is_zero() && !v[j].is_zero()) acc += at(i, j) * v[j];
    }
    out.set(i, std::move(acc));
  }
  return out;
}

InvertiblePolyMatrix::InvertiblePolyMatrix(PolyMatrix forward, PolyMatrix inverse)
    : forward_(std::move(forward)), inverse_(std::move(inverse)) {
  const PolyMatrix id = PolyMatrix::identity(forward_.field(), forward_.nvars(), forward_.rank());
  if (!(forward_ * inverse_ == id) || !(inverse_ * forward_ == id)) {
    throw InvariantError("supplied inverse does not invert the polynomial matrix");
  }
}

InvertiblePolyMatrix InvertiblePolyMatrix::identity(const FieldSpec& field, std::size_t nvars, std::size_t r) {
  const PolyMatrix id = PolyMatrix::identity(field, nvars, r);
  return InvertiblePolyMatrix(id, id);
}

InvertiblePolyMatrix InvertiblePolyMatrix::operator*(const InvertiblePolyMatrix& other) const {
  return InvertiblePolyMatrix(forward_ * other.forward_, other.inverse_ * inverse_);
}

// ---------------------------------------------------------------- PolyAutomorphism

PolyAutomorphism::PolyAutomorphism(std::vector<Poly> forward, std::vector<Poly> inverse)
    : forward_(std::move(forward)), inverse_(std::move(inverse)) {
  if (forward_.empty() || forward_.size() != inverse_.size()) {
    throw DimensionError("automorphism needs one image per variable");
  }
  const std::size_t n = forward_.size();
  const FieldSpec field = forward_[0].field();
  for (const auto* side : {&forward_, &inverse_}) {
    for (const auto& p : *side) {
      require_same_field(field, p.field());
      if (p.nvars() != n) throw DimensionError("automorphism images must live in the same ring");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Poly xi = Poly::variable(field, n, i);
    if (!(forward_[i].substitute(inverse_) == xi) || !(inverse_[i].substitute(forward_) == xi)) {
      throw InvariantError("supplied inverse does not invert the automorphism at x" + std::to_string(i + 1));
    }
  }
}

PolyAutomorphism PolyAutomorphism::identity(const FieldSpec& field, std::size_t nvars) {
  std::vector<Poly> vars;
  for (std::size_t i = 0; i < nvars; ++i) vars.push_back(Poly::variable(field, nvars, i));
  return PolyAutomorphism(vars, vars);
}

Poly PolyAutomorphism::pull(const Poly& f) const { return f.substitute(forward_); }

Poly PolyAutomorphism::push(const Poly& f) const { return f.substitute(inverse_); }

PolyAutomorphism PolyAutomorphism::then(const PolyAutomorphism& next) const {
  std::vector<Poly> fwd, inv;
  for (std::size_t i = 0; i < nvars(); ++i) {
    fwd.push_back(next.forward_[i].substitute(forward_));
    inv.push_back(inverse_[i].substitute(next.inverse_));
  }
  return PolyAutomorphism(std::move(fwd), std::move(inv));
}

// ---------------------------------------------------------------- group actions

MatrixOperator conjugate_glr(const MatrixOperator& op, const InvertiblePolyMatrix& a) {
  if (a.forward().rank() != op.rank()) throw DimensionError("conjugating matrix rank mismatch");
  require_same_field(op.field(), a.forward().field());
  if (a.forward().nvars() != op.nvars()) throw DimensionError("conjugating matrix nvars mismatch");
  if (op.is_zero()) return op;
  const ActionOracle action = [&](const PolyVec& v) {
    return a.inverse().apply(op_apply(op, a.forward().apply(v)));
  };
  return recover_coefficients(action, op.field(), op.rank(), op.nvars(),
                              static_cast<std::size_t>(op.order().value()));
}

MatrixOperator pullback_automorphism(const MatrixOperator& op, const PolyAutomorphism& g) {
  if (!op.field().is_rational()) {
    throw ConversionError("automorphism pullback is only defined in characteristic 0");
  }
  require_same_field(op.field(), g.field());
  if (g.nvars() != op.nvars()) throw DimensionError("automorphism nvars mismatch");
  if (op.is_zero()) return op;
  const ActionOracle action = [&](const PolyVec& v) {
    std::vector<Poly> pulled;
    for (const auto& e : v.entries()) pulled.push_back(g.pull(e));
    const PolyVec image = op_apply(op, PolyVec(std::move(pulled)));
    std::vector<Poly> pushed;
    for (const auto& e : image.entries()) pushed.push_back(g.push(e));
    return PolyVec(std::move(pushed));
  };
  return recover_coefficients(action, op.field(), op.rank(), op.nvars(),
                              static_cast<std::size_t>(op.order().value()));
}

}  // namespace jetkernel
