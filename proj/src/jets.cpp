#include "jetkernel/jets.hpp"

#include "jetkernel/errors.hpp"

namespace jetkernel {

// ---------------------------------------------------------------- JetElement

JetElement::JetElement(const FieldSpec& field, std::size_t nvars, std::size_t order)
    : field_(field), nvars_(nvars), order_(order) {}

JetElement JetElement::from_poly(const Poly& f, std::size_t order) {
  JetElement e(f.field(), f.nvars(), order);
  e.add_term(MultiIndex(f.nvars()), f);
  return e;
}

JetElement JetElement::dx(const FieldSpec& field, std::size_t nvars, std::size_t var, std::size_t order) {
  JetElement e(field, nvars, order);
  e.add_term(MultiIndex::unit(nvars, var), Poly::constant(field, nvars, 1));
  return e;
}

Poly JetElement::coeff(const MultiIndex& dx_index) const {
  auto it = terms_.find(dx_index);
  return it == terms_.end() ? Poly(field_, nvars_) : it->second;
}

void JetElement::add_term(const MultiIndex& dx_index, const Poly& c) {
  if (dx_index.size() != nvars_ || c.nvars() != nvars_) throw DimensionError("jet term nvars mismatch");
  require_same_field(field_, c.field());
  if (c.is_zero() || dx_index.total() > order_) return;
  auto [it, inserted] = terms_.try_emplace(dx_index, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void JetElement::check_compatible(const JetElement& other) const {
  require_same_field(field_, other.field_);
  if (nvars_ != other.nvars_ || order_ != other.order_) throw DimensionError("jet shape mismatch");
}

JetElement& JetElement::operator+=(const JetElement& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

JetElement& JetElement::operator-=(const JetElement& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

JetElement operator*(const JetElement& a, const JetElement& b) {
  a.check_compatible(b);
  JetElement out(a.field_, a.nvars_, a.order_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.total() + mb.total() > a.order_) continue;
      out.add_term(ma + mb, ca * cb);
    }
  }
  return out;
}

bool operator==(const JetElement& a, const JetElement& b) {
  return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
}

JetElement JetElement::truncated(std::size_t new_order) const {
  if (new_order > order_) throw DimensionError("cannot raise the truncation order");
  JetElement out(field_, nvars_, new_order);
  for (const auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

JetElement JetElement::to_field(const FieldSpec& target) const {
  JetElement out(target, nvars_, order_);
  for (const auto& [m, c] : terms_) out.add_term(m, c.to_field(target));
  return out;
}

std::string JetElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    std::string dx;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      if (!dx.empty()) dx += "*";
      dx += "dx" + std::to_string(k + 1);
      if (m[k] > 1) dx += "^" + std::to_string(m[k]);
    }
    s += dx.empty() ? "(" + c.to_string() + ")" : "(" + c.to_string() + ")*" + dx;
  }
  return s;
}

JetElement taylor_jet(const Poly& f, std::size_t order) {
  const FieldSpec& field = f.field();
  const std::size_t n = f.nvars();
  // shifted[k] = x_k + dx_k and its powers, grown on demand
  std::vector<std::vector<JetElement>> powers(n);
  for (std::size_t k = 0; k < n; ++k) {
    JetElement base = JetElement::from_poly(Poly::variable(field, n, k), order);
    base += JetElement::dx(field, n, k, order);
    powers[k].push_back(JetElement::from_poly(Poly::constant(field, n, 1), order));
    powers[k].push_back(std::move(base));
  }
  JetElement out(field, n, order);
  for (const auto& [mono, c] : f.terms()) {
    JetElement term = JetElement::from_poly(Poly::constant(field, n, c), order);
    for (std::size_t k = 0; k < n; ++k) {
      while (powers[k].size() <= mono[k]) powers[k].push_back(powers[k].back() * powers[k][1]);
      if (mono[k] != 0) term = term * powers[k][mono[k]];
    }
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------- JetLinearMap

JetLinearMap::JetLinearMap(const FieldSpec& field, std::size_t nvars, std::size_t r, std::size_t order)
    : field_(field), nvars_(nvars), r_(r), order_(order) {}

void JetLinearMap::set_image(const MultiIndex& dx_index, std::size_t column, std::size_t row, const Poly& value) {
  if (dx_index.size() != nvars_ || dx_index.total() > order_) throw DimensionError("jet basis index out of range");
  if (column >= r_ || row >= r_) throw DimensionError("jet map component out of range");
  require_same_field(field_, value.field());
  if (value.nvars() != nvars_) throw DimensionError("jet map image nvars mismatch");
  const Key key{dx_index, column, row};
  if (value.is_zero()) {
    images_.erase(key);
  } else {
    images_[key] = value;
  }
}

Poly JetLinearMap::image(const MultiIndex& dx_index, std::size_t column, std::size_t row) const {
  auto it = images_.find(Key{dx_index, column, row});
  return it == images_.end() ? Poly(field_, nvars_) : it->second;
}

PolyVec JetLinearMap::apply(const std::vector<JetElement>& jets) const {
  if (jets.size() != r_) throw DimensionError("jet map expects one jet per component");
  PolyVec out(field_, nvars_, r_);
  std::vector<Poly> rows(r_, Poly(field_, nvars_));
  for (const auto& [key, value] : images_) {
    const JetElement& jet = jets[key.column];
    if (jet.order() != order_) throw DimensionError("jet truncation order mismatch");
    const Poly c = jet.coeff(key.dx);
    if (!c.is_zero()) rows[key.row] += c * value;
  }
  for (std::size_t i = 0; i < r_; ++i) out.set(i, std::move(rows[i]));
  return out;
}

JetLinearMap op_to_jet_map(const MatrixOperator& op) {
  const std::size_t order = static_cast<std::size_t>(op.order().clamped_nonnegative());
  JetLinearMap map(op.field(), op.nvars(), op.rank(), order);
  for (std::size_t i = 0; i < op.rank(); ++i) {
    for (std::size_t j = 0; j < op.rank(); ++j) {
      for (const auto& [index, a] : op.at(i, j).terms()) map.set_image(index, j, i, a);
    }
  }
  return map;
}

MatrixOperator jet_map_to_op(const JetLinearMap& map) {
  MatrixOperator op(map.field(), map.nvars(), map.rank());
  std::vector<ScalarOperator> entries(map.rank() * map.rank(), ScalarOperator(map.field(), map.nvars()));
  for (const auto& [key, value] : map.images()) entries[key.row * map.rank() + key.column].add_term(key.dx, value);
  for (std::size_t i = 0; i < map.rank(); ++i) {
    for (std::size_t j = 0; j < map.rank(); ++j) op.set(i, j, std::move(entries[i * map.rank() + j]));
  }
  return op;
}

PolyVec apply_through_jets(const JetLinearMap& map, const PolyVec& v) {
  std::vector<JetElement> jets;
  jets.reserve(v.size());
  for (const auto& e : v.entries()) jets.push_back(taylor_jet(e, map.order()));
  return map.apply(jets);
}

// ---------------------------------------------------------------- presentations

std::size_t JetPresentation::power_relation_count() const { return indices_of_degree(nvars, order + 1).size(); }

JetPresentation jet_presentation(const std::vector<Poly>& relators, std::size_t order) {
  JetPresentation pres;
  pres.order = order;
  if (!relators.empty()) {
    pres.field = relators[0].field();
    pres.nvars = relators[0].nvars();
  }
  for (const auto& f : relators) {
    require_same_field(pres.field, f.field());
    if (f.nvars() != pres.nvars) throw DimensionError("relators disagree on nvars");
    JetElement d1 = taylor_jet(f, order);
    d1 -= JetElement::from_poly(f, order);
    pres.generators.push_back({f, std::move(d1)});
  }
  return pres;
}

BaseChangeReport base_change_check(const std::vector<Poly>& relators, std::size_t nvars, std::size_t order,
                                   std::uint64_t p) {
  const FieldSpec target = FieldSpec::prime(p);
  const FieldSpec rationals = FieldSpec::rationals();
  for (const auto& f : relators) {
    require_same_field(rationals, f.field());
    if (f.nvars() != nvars) throw DimensionError("relators disagree on nvars");
    for (const auto& [m, c] : f.terms()) {
      if (c.rational().get_den() != 1) throw InvariantError("relator coefficient " + c.to_string() + " is not an integer");
    }
  }

  BaseChangeReport report;
  report.prime = p;

  JetPresentation over_q = jet_presentation(relators, order);
  over_q.nvars = nvars;
  report.reduced_from_rationals.field = target;
  report.reduced_from_rationals.nvars = nvars;
  report.reduced_from_rationals.order = order;
  for (const auto& g : over_q.generators) {
    report.reduced_from_rationals.generators.push_back({g.relator.to_field(target), g.differential.to_field(target)});
  }

  std::vector<Poly> reduced;
  for (const auto& f : relators) reduced.push_back(f.to_field(target));
  report.native = jet_presentation(reduced, order);
  report.native.field = target;
  report.native.nvars = nvars;

  for (std::size_t k = 0; k < relators.size(); ++k) {
    if (!(report.native.generators[k] == report.reduced_from_rationals.generators[k])) report.mismatches.push_back(k);
  }
  report.equal = report.mismatches.empty() && report.native == report.reduced_from_rationals;
  return report;
}

}  // namespace jetkernel
