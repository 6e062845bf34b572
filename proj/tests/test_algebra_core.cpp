#include <doctest.h>

#include <stdexcept>

#include "jetkernel/errors.hpp"
#include "jetkernel/matrix.hpp"
#include "jetkernel/poly.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace jetkernel;
using support::poly;

namespace {

const FieldSpec Q = FieldSpec::rationals();

ExactMatrix int_matrix(const FieldSpec& f, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<ScalarVector> out;
  for (const auto& r : rows) {
    ScalarVector row;
    for (long v : r) row.emplace_back(f, v);
    out.push_back(row);
  }
  return ExactMatrix::from_rows(f, out);
}

ExactMatrix random_matrix(const FieldSpec& f, std::size_t rows, std::size_t cols, SeededRng& rng, long bound,
                          int zero_bias) {
  ExactMatrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (static_cast<int>(rng.uniform_below(10)) < zero_bias) continue;
      m.set(i, j, Scalar(f, rng.uniform_symmetric(bound)));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("field specs") {
  CHECK(Q.is_rational());
  CHECK(Q.characteristic() == 0);
  CHECK(FieldSpec::prime(7).characteristic() == 7);
  CHECK(FieldSpec::prime(7).name() == "F_7");
  CHECK(FieldSpec::prime(FieldSpec::max_prime).is_prime());
  CHECK_THROWS_AS(FieldSpec::prime(9), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::prime(1), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::prime(4294967311ULL), std::invalid_argument);
  CHECK_FALSE(FieldSpec::prime(5) == FieldSpec::prime(7));
}

TEST_CASE("scalar arithmetic") {
  const FieldSpec f7 = FieldSpec::prime(7);
  CHECK((Scalar(f7, 3) * Scalar(f7, 5)).residue() == 1);
  CHECK(Scalar(f7, -1).residue() == 6);
  CHECK(Scalar(f7, 3).inverse() == Scalar(f7, 5));
  CHECK((parse_scalar(Q, "3/4") + parse_scalar(Q, "1/4")).is_one());
  CHECK(parse_scalar(f7, "1/2") == Scalar(f7, 4));
  CHECK_THROWS_AS(parse_scalar(FieldSpec::prime(3), "1/3"), ReductionError);
  CHECK_THROWS_AS(Scalar::zero(Q).inverse(), std::domain_error);
  CHECK_THROWS_AS(parse_scalar(Q, "abc"), std::invalid_argument);
  CHECK_THROWS_AS(Scalar(Q, 1) + Scalar(f7, 1), FieldMismatchError);
  CHECK(parse_scalar(Q, "-6/8").to_string() == "-3/4");
}

TEST_CASE("poly_arith examples") {
  const Poly x = support::x(Q);
  const Poly one = Poly::constant(Q, 1, 1);
  CHECK(poly_arith(x + one, x - one, PolyOp::mul) == poly(Q, 1, {{{2}, 1}, {{0}, -1}}));

  const Poly zero(Q, 1);
  const Poly prod = poly_arith(x * x + one, zero, PolyOp::mul);
  CHECK(prod.is_zero());
  CHECK(prod.terms().empty());

  const FieldSpec f2 = FieldSpec::prime(2);
  const Poly y = support::x(f2) + Poly::constant(f2, 1, 1);
  // (x+1)^2 = x^2 + 2x + 1 and 2 = 0 in F_2
  CHECK(poly_arith(y, y, PolyOp::mul) == poly(f2, 1, {{{2}, 1}, {{0}, 1}}));

  CHECK(poly_arith(x, Poly::constant(Q, 1, 3), PolyOp::scalar_mul) == poly(Q, 1, {{{1}, 3}}));
  CHECK_THROWS_AS(poly_arith(x, support::x(Q, 2), PolyOp::add), DimensionError);
  CHECK_THROWS_AS(poly_arith(x, support::x(f2), PolyOp::add), FieldMismatchError);
}

TEST_CASE("zero polynomial degree is a sentinel") {
  const Poly zero(Q, 2);
  CHECK_FALSE(zero.degree().is_finite());
  CHECK(zero.degree() != Degree(0));
  CHECK(zero.degree() != Degree(-1));
  CHECK(zero.degree() < Degree(-100));
  CHECK(Poly::constant(Q, 2, 5).degree() == Degree(0));
  CHECK((zero.degree() + Degree(3)) == Degree::minus_infinity());
  CHECK_THROWS_AS(zero.degree().value(), std::logic_error);
}

TEST_CASE("poly printing and substitution") {
  const Poly p = poly(Q, 2, {{{2, 0}, 1}, {{0, 1}, 0}, {{0, 0}, 1}}) - Poly::monomial(Q, {0, 1}, parse_scalar(Q, "3/4"));
  CHECK(p.to_string() == "x1^2 - 3/4*x2 + 1");
  CHECK(Poly(Q, 1).to_string() == "0");
  CHECK((-support::x(Q)).to_string() == "-x1");

  // p(x1 + 1, x1 * x2)
  const std::vector<Poly> values{support::x(Q, 2, 0) + Poly::constant(Q, 2, 1), support::x(Q, 2, 0) * support::x(Q, 2, 1)};
  const Poly s = p.substitute(values);
  const Poly expected = (values[0] * values[0]) - values[1] * parse_scalar(Q, "3/4") + Poly::constant(Q, 2, 1);
  CHECK(s == expected);
  CHECK(support::x(Q).shifted({2}) == poly(Q, 1, {{{3}, 1}}));
}

TEST_CASE("polynomial ring axioms on random inputs") {
  SeededRng rng(11, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t nvars = 1 + trial % 3;
    const Poly a = sample_poly(Q, nvars, rng.uniform_below(4), rng, 4);
    const Poly b = sample_poly(Q, nvars, rng.uniform_below(4), rng, 4);
    const Poly c = sample_poly(Q, nvars, rng.uniform_below(3), rng, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
    if (!a.is_zero() && !b.is_zero()) CHECK((a * b).degree() == a.degree() + b.degree());
  }
}

TEST_CASE("multi-index order and counts") {
  const auto idx = indices_up_to(2, 2);
  const std::vector<MultiIndex> expected{{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
  CHECK(idx == expected);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t d = 0; d <= 5; ++d) CHECK(indices_up_to(n, d).size() == oracle::count_indices(n, d));
  }
  CHECK(MultiIndex{1, 2}.divides(MultiIndex{1, 3}));
  CHECK_FALSE(MultiIndex{2, 0}.divides(MultiIndex{1, 3}));
  CHECK_THROWS(MultiIndex{2, 0} - MultiIndex{1, 3});
}

TEST_CASE("multi_binomial examples") {
  CHECK(multi_binomial(Q, MultiIndex{2}, MultiIndex{1}) == Scalar(Q, 2));
  CHECK(multi_binomial(Q, MultiIndex{3, 1}, MultiIndex{1, 1}) == Scalar(Q, 3));
  CHECK(multi_binomial(FieldSpec::prime(2), MultiIndex{2}, MultiIndex{1}).is_zero());
  CHECK_THROWS_AS(multi_binomial(Q, MultiIndex{2}, MultiIndex{1, 0}), DimensionError);
}

TEST_CASE("multi_binomial matches Pascal and vanishes exactly off the divisibility order") {
  for (std::uint32_t j0 = 0; j0 <= 6; ++j0) {
    for (std::uint32_t j1 = 0; j1 <= 6; ++j1) {
      for (std::uint32_t i0 = 0; i0 <= 7; ++i0) {
        for (std::uint32_t i1 = 0; i1 <= 7; ++i1) {
          const MultiIndex J{j0, j1}, I{i0, i1};
          const Scalar b = multi_binomial(Q, J, I);
          CHECK(b.rational() == mpq_class(oracle::pascal(j0, i0) * oracle::pascal(j1, i1)));
          CHECK(b.is_zero() == !I.divides(J));
        }
      }
    }
  }
}

TEST_CASE("nullspace examples") {
  CHECK(nullspace(ExactMatrix::identity(Q, 3)).empty());
  CHECK(nullspace(ExactMatrix(Q, 2, 3)).size() == 3);

  const ExactMatrix m = int_matrix(Q, {{1, 2}, {2, 4}});
  const auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  // proportional to (2, -1)
  CHECK(ns[0][0] * Scalar(Q, -1) == ns[0][1] * Scalar(Q, 2));
  CHECK_FALSE(ns[0][0].is_zero());
  for (const auto& v : m * ns[0]) CHECK(v.is_zero());
}

TEST_CASE("nullspace invariants on random matrices") {
  SeededRng rng(5, 1);
  for (const FieldSpec& f : {Q, FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::prime(101)}) {
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t rows = 1 + rng.uniform_below(7), cols = 1 + rng.uniform_below(7);
      const ExactMatrix m = random_matrix(f, rows, cols, rng, 3, 4);
      const auto ns = nullspace(m);
      const std::size_t rk = rank(m);
      CHECK(rk + ns.size() == cols);
      for (const auto& v : ns) {
        for (const auto& e : m * v) CHECK(e.is_zero());
      }
      if (!ns.empty()) CHECK(rank(ExactMatrix::from_rows(f, ns)) == ns.size());
    }
  }
}

TEST_CASE("rank over F_p agrees with a brute-force kernel count") {
  SeededRng rng(6, 2);
  const FieldSpec f3 = FieldSpec::prime(3);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t rows = 1 + rng.uniform_below(4), cols = 1 + rng.uniform_below(5);
    const ExactMatrix m = random_matrix(f3, rows, cols, rng, 1, 3);
    std::size_t count = 0, total = 1;
    for (std::size_t k = 0; k < cols; ++k) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      ScalarVector v;
      for (std::size_t k = 0, c = code; k < cols; ++k, c /= 3) v.emplace_back(f3, static_cast<long>(c % 3));
      bool zero = true;
      for (const auto& e : m * v) zero = zero && e.is_zero();
      count += zero;
    }
    std::size_t expected = 1;
    for (std::size_t k = 0; k < cols - rank(m); ++k) expected *= 3;
    CHECK(count == expected);
  }
}

TEST_CASE("pivot trail reproduces the determinant") {
  SeededRng rng(8, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.uniform_below(6);
    const ExactMatrix m = random_matrix(Q, n, n, rng, 4, 3);
    const EchelonForm ef = echelonize(m, false);
    std::vector<std::vector<mpz_class>> ints(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) ints[i][j] = m.at(i, j).rational().get_num();
    }
    const mpz_class det = oracle::bareiss_det(ints);
    if (ef.rank() < n) {
      CHECK(det == 0);
      continue;
    }
    mpq_class minor = ef.pivot_product.rational() * permutation_sign(ef.pivot_rows);
    CHECK(minor == mpq_class(det));
  }
}

TEST_CASE("permutation sign") {
  CHECK(permutation_sign({0, 1, 2}) == 1);
  CHECK(permutation_sign({1, 0, 2}) == -1);
  CHECK(permutation_sign({2, 0, 1}) == 1);
  CHECK(permutation_sign({7, 3}) == -1);
}
