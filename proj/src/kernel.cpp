#include "jetkernel/kernel.hpp"

#include <algorithm>
#include <map>

#include "jetkernel/errors.hpp"

namespace jetkernel {

namespace {

using ColumnLookup = std::vector<std::map<MultiIndex, std::size_t, GrlexLess>>;

ColumnLookup make_lookup(const std::vector<MonomialVector>& basis, std::size_t r) {
  ColumnLookup lookup(r);
  for (std::size_t k = 0; k < basis.size(); ++k) lookup[basis[k].component].emplace(basis[k].exponent, k);
  return lookup;
}

/// Coordinates of v in `basis`; throws if v has terms outside it.
ScalarVector coordinates(const PolyVec& v, const std::vector<MonomialVector>& basis, const ColumnLookup& lookup) {
  ScalarVector coords(basis.size(), Scalar::zero(v.field()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (const auto& [mono, c] : v[i].terms()) {
      auto it = lookup[i].find(mono);
      if (it == lookup[i].end()) throw DimensionError("vector leaves the truncated space");
      coords[it->second] = c;
    }
  }
  return coords;
}

}  // namespace

std::vector<MonomialVector> monomial_vector_basis(std::size_t nvars, std::size_t r, std::size_t degree) {
  const auto monomials = indices_up_to(nvars, degree);
  std::vector<MonomialVector> basis;
  basis.reserve(r * monomials.size());
  for (std::size_t j = 0; j < r; ++j) {
    for (const auto& m : monomials) basis.push_back({j, m});
  }
  return basis;
}

PolyVec TruncationMatrix::domain_vector(const ScalarVector& coords, const FieldSpec& field, std::size_t nvars,
                                        std::size_t r) const {
  if (coords.size() != domain_basis.size()) throw DimensionError("coordinate vector length mismatch");
  std::vector<Poly> entries(r, Poly(field, nvars));
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (!coords[k].is_zero()) entries[domain_basis[k].component].add_term(domain_basis[k].exponent, coords[k]);
  }
  return PolyVec(std::move(entries));
}

TruncationMatrix truncation_matrix(const MatrixOperator& op, std::size_t degree) {
  TruncationMatrix tm;
  tm.degree = degree;
  tm.codomain_degree = degree + static_cast<std::size_t>(op.shift().clamped_nonnegative());
  tm.domain_basis = monomial_vector_basis(op.nvars(), op.rank(), degree);
  tm.codomain_basis = monomial_vector_basis(op.nvars(), op.rank(), tm.codomain_degree);
  tm.matrix = ExactMatrix(op.field(), tm.codomain_basis.size(), tm.domain_basis.size());
  const ColumnLookup rows = make_lookup(tm.codomain_basis, op.rank());

  for (std::size_t col = 0; col < tm.domain_basis.size(); ++col) {
    const auto& [j, mono] = tm.domain_basis[col];
    const Poly xj = Poly::monomial(op.field(), mono, Scalar::one(op.field()));
    for (std::size_t i = 0; i < op.rank(); ++i) {
      if (op.at(i, j).is_zero()) continue;
      const Poly image = hasse_apply(op.at(i, j), xj);
      for (const auto& [m, c] : image.terms()) {
        auto it = rows[i].find(m);
        if (it == rows[i].end()) throw DimensionError("image escaped the degree bound; shift bookkeeping is broken");
        tm.matrix.set(it->second, col, c);
      }
    }
  }
  return tm;
}

std::vector<PolyVec> kernel_basis(const MatrixOperator& op, std::size_t degree) {
  const TruncationMatrix tm = truncation_matrix(op, degree);
  std::vector<PolyVec> basis;
  for (const auto& coords : nullspace(tm.matrix)) {
    basis.push_back(tm.domain_vector(coords, op.field(), op.nvars(), op.rank()));
  }
  return basis;
}

bool in_span(const std::vector<PolyVec>& basis, const PolyVec& v, std::size_t degree) {
  const auto mono_basis = monomial_vector_basis(v.nvars(), v.size(), degree);
  const ColumnLookup lookup = make_lookup(mono_basis, v.size());
  std::vector<ScalarVector> rows;
  for (const auto& b : basis) rows.push_back(coordinates(b, mono_basis, lookup));
  const std::size_t base_rank = rows.empty() ? 0 : rank(ExactMatrix::from_rows(v.field(), rows));
  rows.push_back(coordinates(v, mono_basis, lookup));
  return rank(ExactMatrix::from_rows(v.field(), rows)) == base_rank;
}

KernelReport kernel_scan(const MatrixOperator& op, std::size_t max_degree, std::size_t plateau, bool keep_bases) {
  KernelReport report;
  report.field = op.field();
  report.max_degree = max_degree;
  report.plateau = plateau;

  std::vector<std::vector<PolyVec>> bases;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    bases.push_back(kernel_basis(op, n));
    report.dims.push_back(bases.back().size());
  }

  report.soundness_verified = true;
  for (const auto& layer : bases) {
    for (const auto& v : layer) {
      if (!op_apply(op, v).is_zero()) report.soundness_verified = false;
    }
  }

  // span(K_n) inside span(K_{n+1}): stacking both must not raise the rank
  report.inclusions_verified = true;
  for (std::size_t n = 0; n < max_degree; ++n) {
    if (report.dims[n] > report.dims[n + 1]) {
      report.inclusions_verified = false;
      continue;
    }
    if (bases[n].empty()) continue;
    const auto mono_basis = monomial_vector_basis(op.nvars(), op.rank(), n + 1);
    const ColumnLookup lookup = make_lookup(mono_basis, op.rank());
    std::vector<ScalarVector> rows;
    for (const auto& b : bases[n + 1]) rows.push_back(coordinates(b, mono_basis, lookup));
    for (const auto& b : bases[n]) rows.push_back(coordinates(b, mono_basis, lookup));
    if (rank(ExactMatrix::from_rows(op.field(), rows)) != report.dims[n + 1]) report.inclusions_verified = false;
  }

  const std::size_t last = report.dims.back();
  std::size_t start = max_degree;
  while (start > 0 && report.dims[start - 1] == last) --start;
  if (max_degree - start + 1 >= plateau) report.stabilized_at = start;

  report.note = "dims are kernel dimensions of degree-truncated restrictions; the full polynomial kernel has dimension >= " +
                std::to_string(last) + "; a plateau is not a certificate";
  if (keep_bases) report.bases = std::move(bases);
  return report;
}

std::optional<ZeroKernelCertificate> zero_kernel_certificate(const MatrixOperator& op, std::size_t degree) {
  const TruncationMatrix tm = truncation_matrix(op, degree);
  const EchelonForm ef = echelonize(tm.matrix, false);
  if (ef.rank() != tm.matrix.cols()) return std::nullopt;

  ZeroKernelCertificate cert;
  cert.degree = degree;
  cert.row_indices = ef.pivot_rows;
  std::sort(cert.row_indices.begin(), cert.row_indices.end());
  cert.col_indices = ef.pivot_cols;
  cert.minor_value = ef.pivot_product;
  if (permutation_sign(ef.pivot_rows) < 0) cert.minor_value = -cert.minor_value;
  return cert;
}

SemicontinuityReport semicontinuity_scan(const MatrixOperator& base, const MatrixOperator& direction,
                                         const std::vector<Scalar>& t_values, std::size_t degree) {
  require_same_field(base.field(), direction.field());
  if (base.rank() != direction.rank() || base.nvars() != direction.nvars()) {
    throw DimensionError("semicontinuity family members differ in shape");
  }
  SemicontinuityReport report;
  report.degree = degree;
  report.constant_family = direction.is_zero();
  for (const auto& t : t_values) {
    const MatrixOperator member = base + t * direction;
    report.entries.push_back({t, kernel_basis(member, degree).size()});
  }
  if (report.entries.empty()) return report;
  report.generic_dim = std::min_element(report.entries.begin(), report.entries.end(), [](const auto& a, const auto& b) {
                         return a.dim < b.dim;
                       })->dim;
  for (const auto& e : report.entries) {
    if (e.dim > report.generic_dim) report.special_locus.push_back(e.t);
  }
  report.strict_special_locus = report.special_locus.size() < report.entries.size();
  return report;
}

std::vector<Scalar> default_t_values(const FieldSpec& field) {
  std::vector<Scalar> ts;
  for (long t = 0; t <= 9; ++t) ts.emplace_back(field, t);
  return ts;
}

}  // namespace jetkernel
