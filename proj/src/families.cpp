#include "jetkernel/families.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <random>
#include <stdexcept>

#include "jetkernel/errors.hpp"

namespace jetkernel {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

bool lower_only(FamilyMode mode) {
  return mode == FamilyMode::TriangularUnit || mode == FamilyMode::ZeroConstantTermTriangular;
}

bool needs_zero_order_zero(FamilyMode mode) {
  return mode == FamilyMode::ZeroConstantTermTriangular || mode == FamilyMode::ZeroConstantTermPerturbation ||
         mode == FamilyMode::SubspaceL;
}

}  // namespace

std::string to_string(FamilyMode mode) {
  switch (mode) {
    case FamilyMode::Universal:
      return "universal";
    case FamilyMode::ConstantCoefficient:
      return "constant-coefficient";
    case FamilyMode::TriangularUnit:
      return "triangular-unit";
    case FamilyMode::ZeroConstantTermTriangular:
      return "zero-constant-term-triangular";
    case FamilyMode::ZeroConstantTermPerturbation:
      return "zero-constant-term-perturbation";
    case FamilyMode::SubspaceL:
      return "subspace-l";
  }
  return "unknown";
}

FamilyMode parse_family_mode(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (FamilyMode m : {FamilyMode::Universal, FamilyMode::ConstantCoefficient, FamilyMode::TriangularUnit,
                       FamilyMode::ZeroConstantTermTriangular, FamilyMode::ZeroConstantTermPerturbation,
                       FamilyMode::SubspaceL}) {
    if (to_string(m) == t) return m;
  }
  throw std::invalid_argument("unknown family mode: " + text);
}

// ---------------------------------------------------------------- FamilySpec

FamilySpec::FamilySpec(FamilyMode mode, std::size_t r, std::size_t nvars, std::size_t order, std::size_t coef_degree,
                       std::vector<Poly> diagonal)
    : mode_(mode), r_(r), nvars_(nvars), order_(order), coef_degree_(coef_degree), diagonal_(std::move(diagonal)) {
  if (r == 0) throw DimensionError("family rank must be at least 1");
  if (nvars == 0) throw DimensionError("family needs at least one variable");
  if (mode == FamilyMode::SubspaceL && nvars < 2) throw DimensionError("subspace L needs nvars >= 2");
  if ((mode == FamilyMode::ZeroConstantTermTriangular || mode == FamilyMode::ZeroConstantTermPerturbation) &&
      nvars != 1) {
    throw DimensionError(to_string(mode) + " family is defined for one variable");
  }
  if (mode == FamilyMode::TriangularUnit) {
    if (diagonal_.size() != r) throw DimensionError("triangular-unit family needs r diagonal polynomials");
    for (const auto& d : diagonal_) {
      if (d.is_zero()) throw InvariantError("triangular-unit diagonal polynomial is zero");
      if (d.nvars() != nvars) throw DimensionError("diagonal polynomial nvars mismatch");
    }
  } else if (!diagonal_.empty()) {
    throw InvariantError("diagonal polynomials only apply to the triangular-unit family");
  }

  const auto derivatives = indices_up_to(nvars, order);
  const auto monomials = indices_up_to(nvars, mode == FamilyMode::ConstantCoefficient ? 0 : coef_degree);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (const auto& d : derivatives) {
        for (const auto& m : monomials) {
          FamilyParameter p{i, j, d, m};
          if (allows(p)) parameters_.push_back(std::move(p));
        }
      }
    }
  }
}

bool FamilySpec::allows(const FamilyParameter& p) const {
  if (p.row >= r_ || p.col >= r_) return false;
  if (p.derivative.size() != nvars_ || p.monomial.size() != nvars_) return false;
  if (p.derivative.total() > order_ || p.monomial.total() > coef_degree_) return false;
  if (lower_only(mode_) && p.row <= p.col) return false;
  if (needs_zero_order_zero(mode_) && p.derivative.is_zero()) return false;
  switch (mode_) {
    case FamilyMode::ConstantCoefficient:
      return p.monomial.is_zero();
    case FamilyMode::SubspaceL:
      return p.derivative[0] == 0;
    default:
      return true;
  }
}

MatrixOperator FamilySpec::base_point(const FieldSpec& field) const {
  MatrixOperator op(field, nvars_, r_);
  for (std::size_t i = 0; i < r_; ++i) {
    if (mode_ == FamilyMode::TriangularUnit) {
      op.set(i, i, ScalarOperator::multiplication(diagonal_[i].to_field(field)));
    } else if (mode_ == FamilyMode::ZeroConstantTermTriangular || mode_ == FamilyMode::ZeroConstantTermPerturbation) {
      op.set(i, i, ScalarOperator::hasse(field, MultiIndex{1}));
    }
  }
  return op;
}

FamilySpec universal_family(std::size_t r, std::size_t nvars, std::size_t order, std::size_t coef_degree) {
  return FamilySpec(FamilyMode::Universal, r, nvars, order, coef_degree);
}

FamilySpec constant_coefficient_family(std::size_t r, std::size_t nvars, std::size_t order) {
  return FamilySpec(FamilyMode::ConstantCoefficient, r, nvars, order, 0);
}

FamilySpec subspace_L_family(std::size_t r, std::size_t nvars, std::size_t order, std::size_t coef_degree) {
  return FamilySpec(FamilyMode::SubspaceL, r, nvars, order, coef_degree);
}

std::size_t universal_parameter_count(std::size_t r, std::size_t nvars, std::size_t order, std::size_t coef_degree) {
  return r * r * binomial(nvars + order, nvars).get_ui() * binomial(nvars + coef_degree, nvars).get_ui();
}

// ---------------------------------------------------------------- sampling

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t index) : engine_(splitmix64(seed ^ splitmix64(index))) {}

std::uint64_t SeededRng::next() { return engine_(); }

std::uint64_t SeededRng::uniform_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("empty range");
  // rejection keeps the draw unbiased and platform independent
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

long SeededRng::uniform_symmetric(long bound) {
  if (bound < 0) throw std::invalid_argument("negative sampling bound");
  return static_cast<long>(uniform_below(2 * static_cast<std::uint64_t>(bound) + 1)) - bound;
}

SamplePoint sample_point(const FamilySpec& spec, std::uint64_t seed, std::uint64_t index, long bound) {
  SamplePoint point;
  point.seed = seed;
  point.index = index;
  point.bound = bound;
  SeededRng rng(seed, index);
  point.values.reserve(spec.parameter_count());
  for (std::size_t k = 0; k < spec.parameter_count(); ++k) point.values.push_back(rng.uniform_symmetric(bound));
  return point;
}

SamplePoint jitter(const SamplePoint& point, std::uint64_t jitter_seed) {
  SamplePoint out = point;
  SeededRng rng(jitter_seed, point.index);
  for (auto& v : out.values) v += rng.uniform_symmetric(1);
  return out;
}

MatrixOperator instantiate(const FamilySpec& spec, const SamplePoint& point, const FieldSpec& field) {
  if (point.values.size() != spec.parameter_count()) {
    throw InvariantError("sample has " + std::to_string(point.values.size()) + " values, family has " +
                         std::to_string(spec.parameter_count()) + " parameters");
  }
  MatrixOperator op = spec.base_point(field);
  const std::size_t r = spec.rank();
  std::vector<ScalarOperator> extra(r * r, ScalarOperator(field, spec.nvars()));
  for (std::size_t k = 0; k < point.values.size(); ++k) {
    if (point.values[k] == 0) continue;
    const auto& p = spec.parameters()[k];
    extra[p.row * r + p.col].add_term(p.derivative, Poly::monomial(field, p.monomial, Scalar(field, point.values[k])));
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) op.set(i, j, op.at(i, j) + extra[i * r + j]);
  }
  return op;
}

bool satisfies_pattern(const FamilySpec& spec, const MatrixOperator& op) {
  if (op.rank() != spec.rank() || op.nvars() != spec.nvars()) return false;
  const MatrixOperator free_part = op - spec.base_point(op.field());
  for (std::size_t i = 0; i < spec.rank(); ++i) {
    for (std::size_t j = 0; j < spec.rank(); ++j) {
      for (const auto& [d, a] : free_part.at(i, j).terms()) {
        for (const auto& [m, c] : a.terms()) {
          if (!spec.allows(FamilyParameter{i, j, d, m})) return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- witnesses

MatrixOperator triangular_witness(std::size_t r, std::size_t nvars, const std::vector<Poly>& diagonal,
                                  const LowerEntries& strictly_lower) {
  if (diagonal.size() != r || r == 0) throw DimensionError("triangular witness needs r diagonal polynomials");
  const FieldSpec field = diagonal[0].field();
  MatrixOperator op(field, nvars, r);
  for (std::size_t i = 0; i < r; ++i) {
    if (diagonal[i].is_zero()) throw InvariantError("triangular witness diagonal entry " + std::to_string(i + 1) + " is zero");
    op.set(i, i, ScalarOperator::multiplication(diagonal[i]));
  }
  for (const auto& [pos, entry] : strictly_lower) {
    if (pos.first <= pos.second || pos.first >= r) throw DimensionError("entry is not strictly lower triangular");
    op.set(pos.first, pos.second, entry);
  }
  return op;
}

MatrixOperator constant_kernel_witness(std::size_t r, const LowerEntries& strictly_lower, const FieldSpec& field) {
  MatrixOperator op(field, 1, r);
  for (std::size_t i = 0; i < r; ++i) op.set(i, i, ScalarOperator::hasse(field, MultiIndex{1}));
  for (const auto& [pos, entry] : strictly_lower) {
    if (pos.first <= pos.second || pos.first >= r) throw DimensionError("entry is not strictly lower triangular");
    if (!entry.coeff(MultiIndex(1)).is_zero()) {
      throw InvariantError("entry (" + std::to_string(pos.first + 1) + "," + std::to_string(pos.second + 1) +
                           ") has a nonzero order-0 coefficient");
    }
    op.set(pos.first, pos.second, entry);
  }
  return op;
}

InvertiblePolyMatrix unitriangular(const FieldSpec& field, std::size_t nvars, std::size_t r,
                                   const std::map<std::pair<std::size_t, std::size_t>, Poly>& strictly_lower) {
  PolyMatrix nilpotent(field, nvars, r);
  for (const auto& [pos, p] : strictly_lower) {
    if (pos.first <= pos.second || pos.first >= r) throw DimensionError("entry is not strictly lower triangular");
    nilpotent.set(pos.first, pos.second, p);
  }
  const PolyMatrix id = PolyMatrix::identity(field, nvars, r);
  PolyMatrix forward = id;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < i; ++j) forward.set(i, j, nilpotent.at(i, j));
  }
  // (I + L)^-1 = sum_{k < r} (-L)^k
  PolyMatrix neg(field, nvars, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) neg.set(i, j, -nilpotent.at(i, j));
  }
  PolyMatrix inverse = id;
  PolyMatrix power = id;
  for (std::size_t k = 1; k < r; ++k) {
    power = power * neg;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) inverse.set(i, j, inverse.at(i, j) + power.at(i, j));
    }
  }
  return InvertiblePolyMatrix(forward, inverse);
}

InvertiblePolyMatrix sample_unitriangular(std::size_t nvars, std::size_t r, std::size_t max_degree, std::uint64_t seed,
                                          std::uint64_t index, long bound) {
  const FieldSpec field = FieldSpec::rationals();
  SeededRng rng(seed ^ 0x5bd1e995ULL, index);
  const auto monomials = indices_up_to(nvars, max_degree);
  std::map<std::pair<std::size_t, std::size_t>, Poly> lower;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Poly p(field, nvars);
      for (const auto& m : monomials) p.add_term(m, Scalar(field, rng.uniform_symmetric(bound)));
      lower.emplace(std::make_pair(i, j), std::move(p));
    }
  }
  return unitriangular(field, nvars, r, lower);
}

PolyAutomorphism translation(const FieldSpec& field, std::size_t nvars, std::size_t var, const Scalar& c) {
  return elementary_automorphism(var, Poly::constant(field, nvars, c));
}

PolyAutomorphism scaling(const FieldSpec& field, std::size_t nvars, std::size_t var, const Scalar& c) {
  if (c.is_zero()) throw InvariantError("scaling by zero is not invertible");
  std::vector<Poly> fwd, inv;
  for (std::size_t k = 0; k < nvars; ++k) {
    const Poly xk = Poly::variable(field, nvars, k);
    fwd.push_back(k == var ? xk * c : xk);
    inv.push_back(k == var ? xk * c.inverse() : xk);
  }
  return PolyAutomorphism(std::move(fwd), std::move(inv));
}

PolyAutomorphism elementary_automorphism(std::size_t var, const Poly& p) {
  const std::size_t nvars = p.nvars();
  if (var >= nvars) throw DimensionError("variable index out of range");
  for (const auto& [m, c] : p.terms()) {
    if (m[var] != 0) throw InvariantError("elementary automorphism term involves its own variable");
  }
  std::vector<Poly> fwd, inv;
  for (std::size_t k = 0; k < nvars; ++k) {
    const Poly xk = Poly::variable(p.field(), nvars, k);
    fwd.push_back(k == var ? xk + p : xk);
    inv.push_back(k == var ? xk - p : xk);
  }
  return PolyAutomorphism(std::move(fwd), std::move(inv));
}

PolyAutomorphism swap_variables(const FieldSpec& field, std::size_t nvars, std::size_t a, std::size_t b) {
  std::vector<Poly> images;
  for (std::size_t k = 0; k < nvars; ++k) {
    const std::size_t src = k == a ? b : (k == b ? a : k);
    images.push_back(Poly::variable(field, nvars, src));
  }
  return PolyAutomorphism(images, images);
}

MatrixOperator gl_translate(const MatrixOperator& op, const InvertiblePolyMatrix& a) { return conjugate_glr(op, a); }

MatrixOperator gl_translate(const MatrixOperator& op, const PolyAutomorphism& g) { return pullback_automorphism(op, g); }

MatrixOperator reduce_mod_p(const MatrixOperator& op, std::uint64_t p) {
  if (!op.field().is_rational()) throw FieldMismatchError("reduce_mod_p expects an operator over Q");
  return op.to_field(FieldSpec::prime(p));
}

std::vector<std::uint64_t> bad_primes(const MatrixOperator& op, std::span<const std::uint64_t> candidates) {
  std::vector<std::uint64_t> bad;
  if (!op.field().is_rational()) return bad;
  for (std::uint64_t p : candidates) {
    bool divides = false;
    for (std::size_t i = 0; i < op.rank() && !divides; ++i) {
      for (std::size_t j = 0; j < op.rank() && !divides; ++j) {
        for (const auto& [d, a] : op.at(i, j).terms()) {
          for (const auto& [m, c] : a.terms()) {
            if (mpz_divisible_ui_p(c.rational().get_den_mpz_t(), p) != 0) divides = true;
          }
        }
      }
    }
    if (divides) bad.push_back(p);
  }
  return bad;
}

}  // namespace jetkernel
