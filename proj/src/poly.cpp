#include "jetkernel/poly.hpp"

#include <sstream>

#include "jetkernel/errors.hpp"

namespace jetkernel {

Poly Poly::constant(const FieldSpec& field, std::size_t nvars, const Scalar& c) {
  Poly p(field, nvars);
  p.add_term(MultiIndex(nvars), c);
  return p;
}

Poly Poly::constant(const FieldSpec& field, std::size_t nvars, long c) {
  return constant(field, nvars, Scalar(field, c));
}

Poly Poly::monomial(const FieldSpec& field, const MultiIndex& exponent, const Scalar& c) {
  Poly p(field, exponent.size());
  p.add_term(exponent, c);
  return p;
}

Poly Poly::variable(const FieldSpec& field, std::size_t nvars, std::size_t var) {
  return monomial(field, MultiIndex::unit(nvars, var), Scalar::one(field));
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
}

Degree Poly::degree() const {
  if (terms_.empty()) return Degree::minus_infinity();
  // grlex: the last key has the largest total degree
  return Degree(static_cast<int>(terms_.rbegin()->first.total()));
}

Scalar Poly::coeff(const MultiIndex& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void Poly::add_term(const MultiIndex& exponent, const Scalar& c) {
  if (exponent.size() != nvars_) throw DimensionError("monomial length does not match nvars");
  require_same_field(field_, c.field());
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::check_compatible(const Poly& other) const {
  require_same_field(field_, other.field_);
  if (nvars_ != other.nvars_) {
    throw DimensionError("polynomial nvars mismatch: " + std::to_string(nvars_) + " vs " +
                         std::to_string(other.nvars_));
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  Poly r(a.field_, a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
  }
  return r;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly& Poly::operator*=(const Scalar& c) {
  require_same_field(field_, c.field());
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

Poly Poly::shifted(const MultiIndex& shift) const {
  if (shift.size() != nvars_) throw DimensionError("shift length does not match nvars");
  Poly r(field_, nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m + shift, c);
  return r;
}

Poly Poly::substitute(std::span<const Poly> values) const {
  if (values.size() != nvars_) throw DimensionError("substitution needs one value per variable");
  if (values.empty()) return *this;
  const std::size_t target_nvars = values[0].nvars();
  for (const auto& v : values) {
    require_same_field(field_, v.field());
    if (v.nvars() != target_nvars) throw DimensionError("substituted values disagree on nvars");
  }
  // powers[k][e] = values[k]^e, grown on demand
  std::vector<std::vector<Poly>> powers(nvars_);
  for (std::size_t k = 0; k < nvars_; ++k) {
    powers[k].push_back(constant(field_, target_nvars, 1));
  }
  Poly result(field_, target_nvars);
  for (const auto& [m, c] : terms_) {
    Poly term = constant(field_, target_nvars, c);
    for (std::size_t k = 0; k < nvars_; ++k) {
      while (powers[k].size() <= m[k]) powers[k].push_back(powers[k].back() * values[k]);
      if (m[k] != 0) term *= powers[k][m[k]];
    }
    result += term;
  }
  return result;
}

Poly Poly::to_field(const FieldSpec& target) const {
  Poly r(target, nvars_);
  for (const auto& [m, c] : terms_) {
    if (field_ == target) {
      r.add_term(m, c);
    } else if (field_.is_rational()) {
      try {
        r.add_term(m, Scalar::from_rational(target, c.rational()));
      } catch (const ReductionError& e) {
        throw ReductionError(std::string(e.what()) + " (coefficient of x^" + m.to_string() + ")");
      }
    } else {
      throw FieldMismatchError("cannot map " + field_.name() + " into " + target.name());
    }
  }
  return r;
}

namespace {

std::string monomial_string(const MultiIndex& m) {
  std::string s;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(k + 1);
    if (m[k] > 1) s += "^" + std::to_string(m[k]);
  }
  return s;
}

}  // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string coef = c.to_string();
    bool negative = false;
    if (field_.is_rational() && sgn(c.rational()) < 0) {
      negative = true;
      coef = (-c).to_string();
    }
    if (first) {
      out << (negative ? "-" : "");
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const std::string mono = monomial_string(m);
    if (mono.empty()) {
      out << coef;
    } else if (coef == "1") {
      out << mono;
    } else {
      out << coef << "*" << mono;
    }
  }
  return out.str();
}

Poly poly_arith(const Poly& p, const Poly& q, PolyOp op) {
  switch (op) {
    case PolyOp::add:
      return p + q;
    case PolyOp::mul:
      return p * q;
    case PolyOp::scalar_mul:
      if (!q.is_constant()) throw DimensionError("scalar_mul expects a constant polynomial");
      require_same_field(p.field(), q.field());
      return p * q.coeff(MultiIndex(q.nvars()));
  }
  return p;
}

PolyVec::PolyVec(const FieldSpec& field, std::size_t nvars, std::size_t r)
    : field_(field), nvars_(nvars), entries_(r, Poly(field, nvars)) {}

PolyVec::PolyVec(std::vector<Poly> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DimensionError("PolyVec needs at least one entry");
  field_ = entries_[0].field();
  nvars_ = entries_[0].nvars();
  for (const auto& e : entries_) {
    require_same_field(field_, e.field());
    if (e.nvars() != nvars_) throw DimensionError("PolyVec entries disagree on nvars");
  }
}

PolyVec PolyVec::unit(const FieldSpec& field, std::size_t nvars, std::size_t r, std::size_t component,
                      const MultiIndex& exponent) {
  if (component >= r) throw DimensionError("component out of range");
  PolyVec v(field, nvars, r);
  v.entries_[component] = Poly::monomial(field, exponent, Scalar::one(field));
  return v;
}

void PolyVec::set(std::size_t i, Poly value) {
  require_same_field(field_, value.field());
  if (value.nvars() != nvars_) throw DimensionError("PolyVec entry nvars mismatch");
  entries_.at(i) = std::move(value);
}

bool PolyVec::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

Degree PolyVec::degree() const {
  Degree d = Degree::minus_infinity();
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return d;
}

PolyVec& PolyVec::operator+=(const PolyVec& other) {
  if (other.size() != size()) throw DimensionError("PolyVec length mismatch");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

PolyVec& PolyVec::operator-=(const PolyVec& other) {
  if (other.size() != size()) throw DimensionError("PolyVec length mismatch");
  for (std::size_t i = 0; i < size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

PolyVec& PolyVec::operator*=(const Scalar& c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

PolyVec PolyVec::to_field(const FieldSpec& target) const {
  PolyVec r(target, nvars_, size());
  for (std::size_t i = 0; i < size(); ++i) r.entries_[i] = entries_[i].to_field(target);
  return r;
}

std::string PolyVec::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s += ", ";
    s += entries_[i].to_string();
  }
  return s + ")";
}

}  // namespace jetkernel
