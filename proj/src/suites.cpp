#include "jetkernel/suites.hpp"

#include <algorithm>
#include <stdexcept>

#include "jetkernel/errors.hpp"
#include "jetkernel/report.hpp"

namespace jetkernel {

namespace {

constexpr std::uint64_t kDiagonalStream = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kVectorStream = 0xc2b2ae3d27d4eb4fULL;
constexpr std::uint64_t kRelatorStream = 0x165667b19e3779f9ULL;

bool is_constant_unit_basis(const std::vector<PolyVec>& basis, std::size_t r) {
  if (basis.size() != r) return false;
  for (std::size_t j = 0; j < r; ++j) {
    const PolyVec& v = basis[j];
    for (std::size_t i = 0; i < r; ++i) {
      const Poly& p = v[i];
      if (i == j ? !(p.is_constant() && !p.is_zero() && p.coeff(MultiIndex(p.nvars())).is_one()) : !p.is_zero()) {
        return false;
      }
    }
  }
  return true;
}

nlohmann::json shape_inputs(const SuiteConfig& c) {
  return {{"suite", c.suite},     {"samples", c.samples}, {"seed", c.seed},
          {"bound", c.bound},     {"r", c.r},             {"nvars", c.nvars},
          {"order", c.order.value_or(0)}, {"coef_degree", c.coef_degree},
          {"nmax", c.nmax.value_or(0)}, {"primes", c.primes}};
}

struct Item {
  bool ok = true;
  nlohmann::json json;
};

Outcome collect(const SuiteConfig& config, std::vector<Item> items, const std::string& what_failed) {
  Outcome out;
  out.inputs = shape_inputs(config);
  nlohmann::json list = nlohmann::json::array();
  for (auto& item : items) {
    if (!item.ok) ++out.failures;
    list.push_back(std::move(item.json));
  }
  out.passed = out.failures == 0;
  out.results = {{"items", std::move(list)}, {"failures", out.failures}};
  out.summary = std::to_string(out.failures) + " " + what_failed + " in " + std::to_string(items.size()) + " samples";
  return out;
}

Outcome suite_triangular_zero(const SuiteConfig& c) {
  const std::size_t nmax = *c.nmax;
  auto items = parallel_map(c.samples, [&](std::size_t i) {
    const SampleShape s = sweep_shape(i, c.r, c.nvars);
    const MatrixOperator op =
        sample_family_member(FamilyMode::TriangularUnit, s.r, s.nvars, *c.order, c.coef_degree, c.seed, i, c.bound);
    const KernelReport rep = kernel_scan(op, nmax, 3, false);
    const auto cert = zero_kernel_certificate(op, nmax);
    Item item;
    item.ok = cert.has_value() && std::all_of(rep.dims.begin(), rep.dims.end(), [](auto d) { return d == 0; });
    item.json = {{"index", i}, {"r", s.r}, {"nvars", s.nvars}, {"dims", rep.dims}, {"certificate", nullptr}};
    if (cert) item.json["certificate"] = certificate_json(*cert);
    if (!item.ok) item.json["operator"] = format_operator_lines(op);
    return item;
  });
  Outcome out = collect(c, std::move(items), "nonzero kernels");
  return out;
}

Outcome suite_constant_kernel(const SuiteConfig& c, FamilyMode mode) {
  const std::size_t nmax = *c.nmax;
  auto items = parallel_map(c.samples, [&](std::size_t i) {
    const std::size_t r = 1 + i % c.r;
    const MatrixOperator op = sample_family_member(mode, r, 1, *c.order, c.coef_degree, c.seed, i, c.bound);
    const KernelReport rep = kernel_scan(op, nmax, 3, true);
    bool ok = rep.soundness_verified && rep.inclusions_verified;
    for (std::size_t n = 0; n <= nmax; ++n) ok = ok && rep.dims[n] == r && is_constant_unit_basis(rep.bases[n], r);
    Item item{ok, {{"index", i}, {"r", r}, {"dims", rep.dims}}};
    if (!ok) {
      item.json["operator"] = format_operator_lines(op);
      item.json["basis_at_max_degree"] = kernel_report_json(rep, true)["basis_at_max_degree"];
    }
    return item;
  });
  return collect(c, std::move(items), "deviations from the constant kernel");
}

Outcome suite_subspace_l(const SuiteConfig& c) {
  const std::size_t nmax = *c.nmax;
  auto items = parallel_map(c.samples, [&](std::size_t i) {
    const MatrixOperator op =
        sample_family_member(FamilyMode::SubspaceL, c.r, c.nvars, *c.order, c.coef_degree, c.seed, i, c.bound);
    const KernelReport rep = kernel_scan(op, nmax, 3, false);
    bool ok = true;
    for (std::size_t n = 0; n <= nmax; ++n) ok = ok && rep.dims[n] >= c.r * (n + 1);
    // x1^3 in the first slot lies in the kernel
    const PolyVec probe = PolyVec::unit(op.field(), c.nvars, c.r, 0, MultiIndex::unit(c.nvars, 0, 3));
    const bool probe_ok = op_apply(op, probe).is_zero();
    Item item{ok && probe_ok, {{"index", i}, {"dims", rep.dims}, {"x1_cubed_in_kernel", probe_ok}}};
    if (!item.ok) item.json["operator"] = format_operator_lines(op);
    return item;
  });
  return collect(c, std::move(items), "violations of dims(n) >= r(n+1)");
}

Outcome suite_basechange(const SuiteConfig& c) {
  const FieldSpec q = FieldSpec::rationals();
  auto items = parallel_map(c.samples, [&](std::size_t i) {
    SeededRng rng(c.seed ^ kRelatorStream, i);
    const std::size_t nvars = 1 + i % c.nvars;
    const std::size_t order = (i / 2) % (*c.order + 1);
    const std::size_t count = i % 4;
    std::vector<Poly> relators;
    for (std::size_t k = 0; k < count; ++k) relators.push_back(sample_poly(q, nvars, 3, rng, c.bound));
    nlohmann::json rel = nlohmann::json::array();
    for (const auto& f : relators) rel.push_back(f.to_string());
    Item item{true, {{"index", i}, {"nvars", nvars}, {"order", order}, {"relators", rel}}};
    nlohmann::json per_prime = nlohmann::json::object();
    for (auto p : c.primes) {
      const BaseChangeReport rep = base_change_check(relators, nvars, order, p);
      per_prime[std::to_string(p)] = rep.equal;
      item.ok = item.ok && rep.equal;
    }
    item.json["equal"] = per_prime;
    return item;
  });
  return collect(c, std::move(items), "base-change mismatches");
}

Outcome suite_jetcorr(const SuiteConfig& c) {
  constexpr std::size_t kVectors = 20;
  constexpr std::size_t kVectorDegree = 8;
  auto items = parallel_map(c.samples, [&](std::size_t i) {
    const SampleShape s = sweep_shape(i, c.r, c.nvars);
    const MatrixOperator op =
        sample_family_member(FamilyMode::Universal, s.r, s.nvars, *c.order, c.coef_degree, c.seed, i, c.bound);
    const JetLinearMap map = op_to_jet_map(op);
    SeededRng rng(c.seed ^ kVectorStream, i);
    std::size_t mismatches = 0;
    for (std::size_t k = 0; k < kVectors; ++k) {
      const PolyVec v = sample_vector(op.field(), s.nvars, s.r, kVectorDegree, rng, c.bound);
      if (!(op_apply(op, v) == apply_through_jets(map, v))) ++mismatches;
    }
    const bool round_trip = jet_map_to_op(map) == op;
    return Item{mismatches == 0 && round_trip,
                {{"index", i}, {"r", s.r}, {"nvars", s.nvars}, {"mismatches", mismatches}, {"round_trip", round_trip}}};
  });
  return collect(c, std::move(items), "factorization mismatches");
}

}  // namespace

// ---------------------------------------------------------------- sample builders

std::vector<Poly> sample_diagonal(std::size_t nvars, std::size_t r, std::size_t coef_degree, std::uint64_t seed,
                                  std::uint64_t index, long bound) {
  if (bound < 1) throw std::invalid_argument("diagonal sampling needs bound >= 1");
  const FieldSpec q = FieldSpec::rationals();
  SeededRng rng(seed ^ kDiagonalStream, index);
  std::vector<Poly> diagonal;
  while (diagonal.size() < r) {
    Poly p = sample_poly(q, nvars, coef_degree, rng, bound);
    if (!p.is_zero()) diagonal.push_back(std::move(p));
  }
  return diagonal;
}

MatrixOperator sample_family_member(FamilyMode mode, std::size_t r, std::size_t nvars, std::size_t order,
                                    std::size_t coef_degree, std::uint64_t seed, std::uint64_t index, long bound,
                                    std::optional<std::uint64_t> jitter_seed) {
  std::vector<Poly> diagonal;
  if (mode == FamilyMode::TriangularUnit) diagonal = sample_diagonal(nvars, r, coef_degree, seed, index, bound);
  const FamilySpec spec(mode, r, nvars, order, coef_degree, std::move(diagonal));
  SamplePoint point = sample_point(spec, seed, index, bound);
  if (jitter_seed) point = jitter(point, *jitter_seed);
  return instantiate(spec, point);
}

Poly sample_poly(const FieldSpec& field, std::size_t nvars, std::size_t degree, SeededRng& rng, long bound) {
  Poly p(field, nvars);
  for (const auto& m : indices_up_to(nvars, degree)) p.add_term(m, Scalar(field, rng.uniform_symmetric(bound)));
  return p;
}

PolyVec sample_vector(const FieldSpec& field, std::size_t nvars, std::size_t r, std::size_t degree, SeededRng& rng,
                      long bound) {
  std::vector<Poly> entries;
  for (std::size_t i = 0; i < r; ++i) entries.push_back(sample_poly(field, nvars, degree, rng, bound));
  return PolyVec(std::move(entries));
}

SampleShape sweep_shape(std::uint64_t index, std::size_t r_max, std::size_t nvars_max) {
  return {1 + static_cast<std::size_t>(index % r_max), 1 + static_cast<std::size_t>((index / r_max) % nvars_max)};
}

std::vector<std::string> format_operator_lines(const MatrixOperator& op) {
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < op.rank(); ++i) {
    std::string row = "[ ";
    for (std::size_t j = 0; j < op.rank(); ++j) row += (j ? " , " : "") + op.at(i, j).to_string();
    rows.push_back(row + " ]");
  }
  return rows;
}

// ---------------------------------------------------------------- suites

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lem2411", "lem1121", "prop1124", "subspaceL", "basechange", "jetcorr"};
  return names;
}

SuiteConfig with_defaults(SuiteConfig c) {
  struct Defaults {
    std::size_t samples, r, nvars, order, nmax;
  };
  Defaults d{};
  if (c.suite == "lem2411") {
    d = {200, 3, 2, 2, 12};
  } else if (c.suite == "lem1121" || c.suite == "prop1124") {
    d = {100, 3, 1, 2, 12};
  } else if (c.suite == "subspaceL") {
    d = {50, 2, 2, 2, 8};
  } else if (c.suite == "basechange") {
    d = {20, 1, 2, 3, 0};
    if (c.primes.empty()) c.primes = {2, 3, 5};
  } else if (c.suite == "jetcorr") {
    d = {100, 2, 2, 2, 0};
  } else {
    throw std::invalid_argument("unknown suite '" + c.suite + "'");
  }
  if (c.samples == 0) c.samples = d.samples;
  if (c.r == 0) c.r = d.r;
  if (c.nvars == 0) c.nvars = d.nvars;
  if (!c.order) c.order = d.order;
  if (!c.nmax) c.nmax = d.nmax;
  return c;
}

Outcome run_suite(const SuiteConfig& raw) {
  const SuiteConfig c = with_defaults(raw);
  if ((c.suite == "lem1121" || c.suite == "prop1124") && c.nvars != 1) {
    throw std::invalid_argument(c.suite + " is a one-variable suite");
  }
  if (c.suite == "subspaceL" && c.nvars < 2) throw std::invalid_argument("subspaceL needs nvars >= 2");
  if (c.suite == "lem2411") return suite_triangular_zero(c);
  if (c.suite == "lem1121") return suite_constant_kernel(c, FamilyMode::ZeroConstantTermTriangular);
  if (c.suite == "prop1124") return suite_constant_kernel(c, FamilyMode::ZeroConstantTermPerturbation);
  if (c.suite == "subspaceL") return suite_subspace_l(c);
  if (c.suite == "basechange") return suite_basechange(c);
  return suite_jetcorr(c);
}

// ---------------------------------------------------------------- experiments

Outcome scan_family(const FamilyScanConfig& c) {
  auto items = parallel_map(c.samples, [&](std::size_t i) {
    const MatrixOperator op =
        sample_family_member(c.mode, c.r, c.nvars, c.order, c.coef_degree, c.seed, i, c.bound, c.jitter_seed);
    const KernelReport rep = kernel_scan(op, c.nmax, c.plateau, true);
    nlohmann::json item = kernel_report_json(rep, rep.dims.back() != 0);
    item["index"] = i;
    item.erase("note");
    if (rep.dims.back() == 0) {
      const auto cert = zero_kernel_certificate(op, c.nmax);
      item["certificate"] = cert ? certificate_json(*cert) : nlohmann::json(nullptr);
    } else {
      item["operator"] = format_operator_lines(op);
    }
    return item;
  });
  Outcome out;
  out.inputs = {{"mode", to_string(c.mode)}, {"r", c.r},          {"nvars", c.nvars},
                {"order", c.order},          {"coef_degree", c.coef_degree}, {"samples", c.samples},
                {"seed", c.seed},            {"bound", c.bound},  {"nmax", c.nmax},
                {"plateau", c.plateau},      {"jitter_seed", nullptr}};
  if (c.jitter_seed) out.inputs["jitter_seed"] = *c.jitter_seed;
  std::size_t zero = 0;
  for (const auto& item : items) zero += item["dims"].back() == 0 ? 1 : 0;
  out.results = {{"zero_kernel_count", zero}, {"nonzero_kernel_count", c.samples - zero}, {"items", items}};
  out.summary = std::to_string(zero) + "/" + std::to_string(c.samples) + " samples with zero kernel up to degree " +
                std::to_string(c.nmax);
  return out;
}

Outcome modp_study(const std::vector<MatrixOperator>& ops, std::size_t degree, const std::vector<std::uint64_t>& primes) {
  auto items = parallel_map(ops.size(), [&](std::size_t i) {
    const MatrixOperator& op = ops[i];
    if (!op.field().is_rational()) throw FieldMismatchError("mod-p study expects operators over Q");
    const std::size_t dim_q = kernel_basis(op, degree).size();
    const auto bad = bad_primes(op, primes);
    Item item{true, {{"index", i}, {"dim_Q", dim_q}, {"bad_primes", bad}}};
    nlohmann::json dims = nlohmann::json::object();
    for (auto p : primes) {
      if (std::find(bad.begin(), bad.end(), p) != bad.end()) continue;
      const std::size_t dim_p = kernel_basis(reduce_mod_p(op, p), degree).size();
      dims[std::to_string(p)] = dim_p;
      item.ok = item.ok && dim_p >= dim_q;
    }
    item.json["dim_F_p"] = dims;
    return item;
  });
  Outcome out;
  out.inputs = {{"operators", ops.size()}, {"degree", degree}, {"primes", primes}};
  nlohmann::json list = nlohmann::json::array();
  for (auto& item : items) {
    if (!item.ok) ++out.failures;
    list.push_back(std::move(item.json));
  }
  out.passed = out.failures == 0;
  out.results = {{"items", list}, {"failures", out.failures}};
  out.summary = std::to_string(out.failures) + " specialization failures in " + std::to_string(ops.size()) + " operators";
  return out;
}

std::vector<MatrixOperator> modp_default_operators(std::size_t samples, std::uint64_t seed, long bound) {
  std::vector<MatrixOperator> ops;
  for (std::size_t i = 0; i < samples; ++i) {
    ops.push_back(sample_family_member(FamilyMode::ZeroConstantTermTriangular, 1 + i % 3, 1, 2, 2, seed, i, bound));
  }
  return ops;
}

Outcome conjugation_study(const MatrixOperator& op, std::uint64_t seed, std::size_t a_degree, std::size_t nmax) {
  const InvertiblePolyMatrix a = sample_unitriangular(op.nvars(), op.rank(), a_degree, seed, 0);
  const MatrixOperator conj = conjugate_glr(op, a);
  const std::size_t d_a = static_cast<std::size_t>(a.inverse_degree());
  Outcome out;
  out.inputs = {{"operator", format_operator_lines(op)}, {"seed", seed}, {"a_degree", a_degree}, {"nmax", nmax}};
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t n = 0; n <= nmax; ++n) {
    const auto basis = kernel_basis(op, n);
    std::size_t transported = 0;
    for (const auto& v : basis) {
      if (op_apply(conj, a.inverse().apply(v)).is_zero()) ++transported;
    }
    const std::size_t dim_conj = kernel_basis(conj, n + d_a).size();
    const bool ok = transported == basis.size() && basis.size() <= dim_conj;
    if (!ok) ++out.failures;
    table.push_back({{"degree", n}, {"dim", basis.size()}, {"transported", transported},
                     {"dim_conjugate_at_shifted_degree", dim_conj}});
  }
  nlohmann::json a_rows = nlohmann::json::array();
  for (std::size_t i = 0; i < a.forward().rank(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < a.forward().rank(); ++j) row.push_back(a.forward().at(i, j).to_string());
    a_rows.push_back(row);
  }
  out.passed = out.failures == 0;
  out.results = {{"A", a_rows}, {"inverse_degree", d_a}, {"conjugate", format_operator_lines(conj)}, {"table", table}};
  out.summary = std::to_string(out.failures) + " degrees with failed kernel transport";
  return out;
}

Outcome semicontinuity_study(const MatrixOperator& base, const MatrixOperator& direction,
                             const std::vector<Scalar>& t_values, std::size_t degree) {
  const SemicontinuityReport rep = semicontinuity_scan(base, direction, t_values, degree);
  Outcome out;
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& t : t_values) ts.push_back(scalar_json(t));
  out.inputs = {{"base", format_operator_lines(base)}, {"direction", format_operator_lines(direction)},
                {"t_values", ts}, {"degree", degree}};
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : rep.entries) entries.push_back({{"t", scalar_json(e.t)}, {"dim", e.dim}});
  nlohmann::json special = nlohmann::json::array();
  for (const auto& t : rep.special_locus) special.push_back(scalar_json(t));
  out.results = {{"entries", entries},
                 {"generic_dim", rep.generic_dim},
                 {"special_locus", special},
                 {"constant_family", rep.constant_family},
                 {"strict_special_locus", rep.strict_special_locus}};
  out.passed = rep.constant_family ? rep.special_locus.empty() : rep.strict_special_locus;
  out.failures = out.passed ? 0 : 1;
  out.summary = "generic dimension " + std::to_string(rep.generic_dim) + ", " +
                std::to_string(rep.special_locus.size()) + " special t values";
  return out;
}

}  // namespace jetkernel
