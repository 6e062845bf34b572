#include <doctest.h>

#include "jetkernel/errors.hpp"
#include "jetkernel/kernel.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace jetkernel;
using support::poly;

namespace {

const FieldSpec Q = FieldSpec::rationals();

MatrixOperator scalar(const ScalarOperator& s) { return MatrixOperator::from_entries({{s}}); }

ScalarVector ints(std::initializer_list<long> v) {
  ScalarVector out;
  for (long x : v) out.emplace_back(Q, x);
  return out;
}

/// 1, x^3, x^6, ... up to degree n: the polynomials killed by d^[1] over F_3.
std::size_t f3_kernel_count(std::size_t n) {
  std::size_t count = 0;
  for (std::size_t k = 0; k <= n; ++k) count += (k % 3 == 0);
  return count;
}

}  // namespace

TEST_CASE("truncation_matrix examples") {
  const TruncationMatrix id = truncation_matrix(MatrixOperator::identity(Q, 1, 1), 1);
  CHECK(id.matrix == ExactMatrix::identity(Q, 2));

  const TruncationMatrix d = truncation_matrix(scalar(support::d1(Q)), 2);
  CHECK(d.matrix.cols() == 3);
  CHECK(d.codomain_degree == 2);
  CHECK(d.matrix.rows() == 3);
  CHECK(d.matrix == ExactMatrix::from_rows(Q, {ints({0, 1, 0}), ints({0, 0, 2}), ints({0, 0, 0})}));

  const TruncationMatrix z = truncation_matrix(MatrixOperator(Q, 2, 2), 2);
  CHECK(rank(z.matrix) == 0);
  CHECK(z.matrix.cols() == 12);
}

TEST_CASE("truncation matrix columns are images of the domain basis") {
  SeededRng rng(41, 0);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t nvars = 1 + trial % 2, r = 1 + trial % 3, n = trial % 4;
    const MatrixOperator D = support::random_op(Q, nvars, r, 2, 3, rng);
    const TruncationMatrix tm = truncation_matrix(D, n);
    CHECK(tm.domain_basis.size() == r * oracle::count_indices(nvars, n));
    CHECK(tm.codomain_degree == n + static_cast<std::size_t>(D.shift().clamped_nonnegative()));
    for (std::size_t k = 0; k < tm.domain_basis.size(); ++k) {
      const auto& [comp, mono] = tm.domain_basis[k];
      const PolyVec image = op_apply(D, PolyVec::unit(Q, nvars, r, comp, mono));
      PolyVec rebuilt(Q, nvars, r);
      for (std::size_t row = 0; row < tm.codomain_basis.size(); ++row) {
        const Scalar& c = tm.matrix.at(row, k);
        if (c.is_zero()) continue;
        rebuilt += c * PolyVec::unit(Q, nvars, r, tm.codomain_basis[row].component, tm.codomain_basis[row].exponent);
      }
      CHECK(rebuilt == image);
    }
  }
}

TEST_CASE("kernel_basis examples") {
  const auto k = kernel_basis(scalar(support::d1(Q)), 4);
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == Poly::constant(Q, 1, 1));

  ScalarOperator euler = compose(ScalarOperator::multiplication(support::x(Q)), support::d1(Q));
  euler -= ScalarOperator::identity(Q, 1);
  const auto e = kernel_basis(scalar(euler), 3);
  REQUIRE(e.size() == 1);
  CHECK(e[0][0] == support::x(Q));

  const MatrixOperator W = constant_kernel_witness(2, {{{1, 0}, compose(ScalarOperator::multiplication(support::x(Q)), support::d1(Q))}});
  const auto w = kernel_basis(W, 5);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == PolyVec({Poly::constant(Q, 1, 1), Poly(Q, 1)}));
  CHECK(w[1] == PolyVec({Poly(Q, 1), Poly::constant(Q, 1, 1)}));
}

TEST_CASE("kernel_scan examples") {
  const KernelReport id = kernel_scan(MatrixOperator::identity(Q, 2, 2), 5);
  CHECK(id.dims == std::vector<std::size_t>(6, 0));
  REQUIRE(id.stabilized_at.has_value());
  CHECK(*id.stabilized_at == 0);

  const FieldSpec f3 = FieldSpec::prime(3);
  const KernelReport d3 = kernel_scan(scalar(support::d1(f3)), 7);
  CHECK(d3.dims == std::vector<std::size_t>{1, 1, 1, 2, 2, 2, 3, 3});
  for (std::size_t n = 0; n <= 7; ++n) CHECK(d3.dims[n] == f3_kernel_count(n));
  CHECK_FALSE(d3.stabilized_at.has_value());
  CHECK(d3.bases[7][2][0] == Poly::monomial(f3, MultiIndex{6}, Scalar::one(f3)));

  const KernelReport z = kernel_scan(MatrixOperator(Q, 1, 1), 6);
  for (std::size_t n = 0; n <= 6; ++n) CHECK(z.dims[n] == n + 1);
  CHECK_FALSE(z.stabilized_at.has_value());
  CHECK(z.note.find("not a certificate") != std::string::npos);
}

TEST_CASE("plateau length controls stabilization") {
  const KernelReport d = kernel_scan(scalar(support::d1(FieldSpec::prime(3))), 5, 3);
  // dims 1,1,1,2,2,2: the final run has length 3
  REQUIRE(d.stabilized_at.has_value());
  CHECK(*d.stabilized_at == 3);
  CHECK_FALSE(kernel_scan(scalar(support::d1(FieldSpec::prime(3))), 5, 4).stabilized_at.has_value());
}

TEST_CASE("scan invariants on random operators") {
  SeededRng rng(42, 0);
  for (const FieldSpec& f : {Q, FieldSpec::prime(2), FieldSpec::prime(5)}) {
    for (int trial = 0; trial < 8; ++trial) {
      const std::size_t nvars = 1 + trial % 2, r = 1 + trial % 2;
      // low order, sparse-ish coefficients make nonzero kernels likely
      const MatrixOperator D = support::random_op(f, nvars, r, 1 + trial % 2, 1, rng, 1);
      const KernelReport rep = kernel_scan(D, 4);
      CHECK(rep.soundness_verified);
      CHECK(rep.inclusions_verified);
      for (std::size_t n = 0; n <= 4; ++n) {
        if (n > 0) CHECK(rep.dims[n - 1] <= rep.dims[n]);
        const TruncationMatrix tm = truncation_matrix(D, n);
        CHECK(rep.dims[n] == tm.matrix.cols() - rank(tm.matrix));
        for (const auto& v : rep.bases[n]) {
          CHECK(op_apply(D, v).is_zero());
          CHECK(v.degree() <= Degree(static_cast<int>(n)));
        }
        if (n > 0) {
          for (const auto& v : rep.bases[n - 1]) CHECK(in_span(rep.bases[n], v, n));
        }
      }
    }
  }
}

TEST_CASE("kernel dimension matches brute-force enumeration over F_2") {
  const FieldSpec f2 = FieldSpec::prime(2);
  SeededRng rng(43, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t r = 1 + trial % 2, n = 2;
    const MatrixOperator D = support::random_op(f2, 1, r, 2, 1, rng, 1);
    const auto basis = monomial_vector_basis(1, r, n);
    std::size_t count = 0;
    for (std::size_t code = 0; code < (1u << basis.size()); ++code) {
      PolyVec v(f2, 1, r);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (code >> k & 1) v += PolyVec::unit(f2, 1, r, basis[k].component, basis[k].exponent);
      }
      count += op_apply(D, v).is_zero();
    }
    CHECK(count == (1u << kernel_basis(D, n).size()));
  }
}

TEST_CASE("zero_kernel_certificate examples") {
  const auto id = zero_kernel_certificate(MatrixOperator::identity(Q, 1, 1), 2);
  REQUIRE(id.has_value());
  CHECK(id->minor_value.is_one());
  CHECK(id->row_indices == std::vector<std::size_t>{0, 1, 2});

  CHECK_FALSE(zero_kernel_certificate(scalar(support::d1(Q)), 3).has_value());

  const Poly one = Poly::constant(Q, 1, 1);
  const MatrixOperator T = triangular_witness(2, 1, {support::x(Q) + one, Poly::constant(Q, 1, 2)},
                                              {{{1, 0}, support::d1(Q)}});
  const auto cert = zero_kernel_certificate(T, 4);
  REQUIRE(cert.has_value());
  const TruncationMatrix tm = truncation_matrix(T, 4);
  const mpq_class det = oracle::rational_det(oracle::cited_submatrix(tm, *cert));
  CHECK(det != 0);
  CHECK(det == cert->minor_value.rational());
  CHECK(kernel_basis(T, 4).empty());
}

TEST_CASE("certificate soundness on random triangular operators") {
  for (std::uint64_t i = 0; i < 12; ++i) {
    const SampleShape s = sweep_shape(i, 3, 2);
    const MatrixOperator D = sample_family_member(FamilyMode::TriangularUnit, s.r, s.nvars, 2, 2, 44, i, 5);
    const std::size_t n = 3;
    const auto cert = zero_kernel_certificate(D, n);
    REQUIRE(cert.has_value());
    const TruncationMatrix tm = truncation_matrix(D, n);
    CHECK(cert->row_indices.size() == tm.domain_basis.size());
    CHECK(std::is_sorted(cert->row_indices.begin(), cert->row_indices.end()));
    CHECK(oracle::rational_det(oracle::cited_submatrix(tm, *cert)) == cert->minor_value.rational());
    CHECK(kernel_basis(D, n).empty());
  }
}

TEST_CASE("semicontinuity_scan examples") {
  const auto ts = [](std::initializer_list<long> v) {
    std::vector<Scalar> out;
    for (long t : v) out.emplace_back(Q, t);
    return out;
  };
  const MatrixOperator zero(Q, 1, 1), id = MatrixOperator::identity(Q, 1, 1);
  const SemicontinuityReport a = semicontinuity_scan(zero, id, ts({0, 1, 2, 3}), 2);
  CHECK(a.entries[0].dim == 3);
  for (std::size_t k = 1; k < 4; ++k) CHECK(a.entries[k].dim == 0);
  CHECK(a.generic_dim == 0);
  REQUIRE(a.special_locus.size() == 1);
  CHECK(a.special_locus[0].is_zero());
  CHECK(a.strict_special_locus);

  const SemicontinuityReport b = semicontinuity_scan(scalar(support::d1(Q)), id, ts({0, 1, 2, 3, 4, 5}), 6);
  CHECK(b.entries[0].dim == 1);
  for (std::size_t k = 1; k < 6; ++k) CHECK(b.entries[k].dim == 0);

  const SemicontinuityReport c = semicontinuity_scan(scalar(support::d1(Q)), zero, default_t_values(Q), 4);
  CHECK(c.constant_family);
  CHECK(c.special_locus.empty());
  CHECK(c.entries.size() == 10);

  CHECK_THROWS_AS(semicontinuity_scan(zero, MatrixOperator(Q, 1, 2), ts({0}), 1), DimensionError);
}

TEST_CASE("conjugation transport bound on dimensions") {
  for (std::uint64_t i = 0; i < 6; ++i) {
    const MatrixOperator D = sample_family_member(FamilyMode::SubspaceL, 2, 2, 1, 1, 45, i, 4);
    const InvertiblePolyMatrix A = sample_unitriangular(2, 2, 1, 45, i);
    const MatrixOperator C = conjugate_glr(D, A);
    const std::size_t dA = static_cast<std::size_t>(A.inverse_degree());
    for (std::size_t n = 0; n <= 3; ++n) {
      const auto basis = kernel_basis(D, n);
      CHECK(basis.size() <= kernel_basis(C, n + dA).size());
      for (const auto& v : basis) CHECK(op_apply(C, A.inverse().apply(v)).is_zero());
    }
  }
}
