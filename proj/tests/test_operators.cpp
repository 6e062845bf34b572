#include <doctest.h>

#include "jetkernel/errors.hpp"
#include "jetkernel/operators.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace jetkernel;
using support::poly;

namespace {

const FieldSpec Q = FieldSpec::rationals();

MatrixOperator grid(std::vector<std::vector<ScalarOperator>> g) { return MatrixOperator::from_entries(g); }

ScalarOperator mul(const Poly& p) { return ScalarOperator::multiplication(p); }

PolyVec vec(std::vector<Poly> v) { return PolyVec(std::move(v)); }

/// [[d, 0], [1, d]] in one variable.
MatrixOperator worked_example(const FieldSpec& f) {
  const ScalarOperator zero(f, 1);
  return grid({{support::d1(f), zero}, {ScalarOperator::identity(f, 1), support::d1(f)}});
}

}  // namespace

TEST_CASE("hasse_apply examples") {
  const Poly x2 = poly(Q, 1, {{{2}, 1}});
  CHECK(hasse_apply(support::d1(Q), x2) == poly(Q, 1, {{{1}, 2}}));
  CHECK(hasse_apply(ScalarOperator::hasse(Q, MultiIndex{2}), x2) == Poly::constant(Q, 1, 1));

  const FieldSpec f2 = FieldSpec::prime(2);
  const Poly y2 = poly(f2, 1, {{{2}, 1}});
  CHECK(hasse_apply(ScalarOperator::hasse(f2, MultiIndex{2}), y2) == Poly::constant(f2, 1, 1));
  CHECK(hasse_apply(support::d1(f2), hasse_apply(support::d1(f2), y2)).is_zero());
  CHECK_THROWS_AS(hasse_apply(support::d1(Q), y2), FieldMismatchError);
}

TEST_CASE("hasse action agrees with classical derivatives over factorials") {
  SeededRng rng(21, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t nvars = 1 + trial % 2;
    const ScalarOperator op = support::random_scalar_op(Q, nvars, 3, 2, rng);
    const Poly p = sample_poly(Q, nvars, 5, rng, 6);
    CHECK(hasse_apply(op, p) == oracle::apply_classical(op, p));
  }
}

TEST_CASE("op_apply examples") {
  const Poly x = support::x(Q);
  const Poly one = Poly::constant(Q, 1, 1);
  CHECK(op_apply(MatrixOperator::identity(Q, 1, 2), vec({x, one})) == vec({x, one}));
  // [[d,0],[1,d]] (x^2, x) = (2x, x^2 + 1)
  CHECK(op_apply(worked_example(Q), vec({x * x, x})) == vec({x * Scalar(Q, 2), x * x + one}));
  CHECK(op_apply(MatrixOperator(Q, 1, 2), vec({x * x, x})).is_zero());
  CHECK_THROWS_AS(op_apply(worked_example(Q), vec({x})), DimensionError);
}

TEST_CASE("op_compose examples") {
  const ScalarOperator d = support::d1(Q);
  const ScalarOperator xop = mul(support::x(Q));
  ScalarOperator expected = compose(xop, d);
  expected += ScalarOperator::identity(Q, 1);
  CHECK(compose(d, xop) == expected);
  CHECK(expected.to_string() == "x1*h(1,1) + 1");

  const MatrixOperator D = worked_example(Q);
  CHECK(op_compose(D, MatrixOperator::identity(Q, 1, 2)) == D);
  CHECK(compose(d, d) == Scalar(Q, 2) * ScalarOperator::hasse(Q, MultiIndex{2}));
  // double application on x^2 and x^3
  const ScalarOperator dd = compose(d, d);
  for (std::uint32_t k : {2u, 3u}) {
    const Poly m = Poly::monomial(Q, MultiIndex{k}, Scalar::one(Q));
    CHECK(hasse_apply(dd, m) == hasse_apply(d, hasse_apply(d, m)));
  }
}

TEST_CASE("composition coherence on random operators") {
  SeededRng rng(22, 0);
  for (const FieldSpec& f : {Q, FieldSpec::prime(3)}) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t nvars = 1 + trial % 2, r = 1 + (trial / 2) % 2;
      const MatrixOperator a = support::random_op(f, nvars, r, 2, 2, rng);
      const MatrixOperator b = support::random_op(f, nvars, r, 2, 2, rng);
      const MatrixOperator ab = op_compose(a, b);
      CHECK(ab.order() <= a.order() + b.order());
      for (int k = 0; k < 3; ++k) {
        const PolyVec v = sample_vector(f, nvars, r, 6, rng, 5);
        CHECK(op_apply(ab, v) == op_apply(a, op_apply(b, v)));
      }
    }
  }
}

TEST_CASE("hasse composition identity") {
  for (const FieldSpec& f : {Q, FieldSpec::prime(2), FieldSpec::prime(3)}) {
    for (const auto& I : indices_up_to(2, 3)) {
      for (const auto& J : indices_up_to(2, 3)) {
        const ScalarOperator lhs = compose(ScalarOperator::hasse(f, I), ScalarOperator::hasse(f, J));
        const mpz_class c = oracle::pascal(I[0] + J[0], I[0]) * oracle::pascal(I[1] + J[1], I[1]);
        const ScalarOperator rhs = Scalar::from_rational(f, mpq_class(c)) * ScalarOperator::hasse(f, I + J);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("linearity and the degree-shift bound") {
  SeededRng rng(23, 0);
  bool equality_seen = false;
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t nvars = 1 + trial % 2, r = 1 + trial % 3;
    const MatrixOperator D = support::random_op(Q, nvars, r, 2, 3, rng);
    const PolyVec u = sample_vector(Q, nvars, r, 5, rng, 5);
    const PolyVec v = sample_vector(Q, nvars, r, 5, rng, 5);
    const Scalar a(Q, rng.uniform_symmetric(9)), b(Q, rng.uniform_symmetric(9));
    CHECK(op_apply(D, a * u + b * v) == a * op_apply(D, u) + b * op_apply(D, v));
    const PolyVec out = op_apply(D, v);
    const Degree bound = v.degree() + Degree(D.shift().clamped_nonnegative());
    CHECK(out.degree() <= bound);
    equality_seen = equality_seen || out.degree() == bound;
  }
  CHECK(equality_seen);
}

TEST_CASE("order and shift sentinels") {
  const ScalarOperator zero(Q, 1);
  CHECK_FALSE(zero.order().is_finite());
  CHECK(zero.order() != Degree(0));
  CHECK(ScalarOperator::identity(Q, 1).order() == Degree(0));
  CHECK_FALSE(MatrixOperator(Q, 1, 2).shift().is_finite());
  CHECK(support::d1(Q).shift() == Degree(-1));
  CHECK(mul(support::x(Q) * support::x(Q)).shift() == Degree(2));
  CHECK(worked_example(Q).order() == Degree(1));
}

TEST_CASE("classical_to_hasse examples") {
  std::map<MultiIndex, Poly, GrlexLess> c;
  c.emplace(MultiIndex{2}, Poly::constant(Q, 1, 1));
  CHECK(classical_to_hasse(Q, 1, c) == Scalar(Q, 2) * ScalarOperator::hasse(Q, MultiIndex{2}));

  std::map<MultiIndex, Poly, GrlexLess> first;
  first.emplace(MultiIndex{1}, support::x(Q));
  CHECK(classical_to_hasse(Q, 1, first) == compose(mul(support::x(Q)), support::d1(Q)));

  const FieldSpec f3 = FieldSpec::prime(3);
  std::map<MultiIndex, Poly, GrlexLess> cube;
  cube.emplace(MultiIndex{3}, Poly::constant(f3, 1, 1));
  try {
    classical_to_hasse(f3, 1, cube);
    FAIL("expected a conversion error");
  } catch (const ConversionError& e) {
    CHECK(std::string(e.what()).find("(3)") != std::string::npos);
  }
  // 2! is still invertible mod 3
  std::map<MultiIndex, Poly, GrlexLess> square;
  square.emplace(MultiIndex{2}, Poly::constant(f3, 1, 1));
  CHECK(classical_to_hasse(f3, 1, square) == Scalar(f3, 2) * ScalarOperator::hasse(f3, MultiIndex{2}));
}

TEST_CASE("classical and hasse conversions are mutually inverse") {
  SeededRng rng(24, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t nvars = 1 + trial % 2;
    const ScalarOperator op = support::random_scalar_op(Q, nvars, 3, 2, rng);
    CHECK(classical_to_hasse(Q, nvars, hasse_to_classical(op)) == op);
  }
}

TEST_CASE("recover_coefficients examples") {
  const ScalarOperator d = support::d1(Q);
  const auto as_op = [](const ScalarOperator& s) { return MatrixOperator::from_entries({{s}}); };
  const MatrixOperator D = as_op(d);
  CHECK(recover_coefficients([&](const PolyVec& v) { return op_apply(D, v); }, Q, 1, 1, 1) == D);

  const Poly x = support::x(Q);
  const auto times_x = [&](const PolyVec& v) { return vec({x * v[0]}); };
  CHECK(recover_coefficients(times_x, Q, 1, 1, 0) == as_op(mul(x)));

  const MatrixOperator W = worked_example(Q);
  CHECK(recover_coefficients([&](const PolyVec& v) { return op_apply(W, v); }, Q, 2, 1, 1) == W);

  // f -> f(x+1) has infinite order
  const auto shift = [&](const PolyVec& v) {
    const std::vector<Poly> sub{x + Poly::constant(Q, 1, 1)};
    return vec({v[0].substitute(sub)});
  };
  CHECK_THROWS_AS(recover_coefficients(shift, Q, 1, 1, 2), ReconstructionError);
}

TEST_CASE("recover_coefficients round trip on random operators") {
  SeededRng rng(25, 0);
  for (const FieldSpec& f : {Q, FieldSpec::prime(5)}) {
    for (int trial = 0; trial < 15; ++trial) {
      const std::size_t nvars = 1 + trial % 2, r = 1 + trial % 2;
      const MatrixOperator D = support::random_op(f, nvars, r, 2, 2, rng);
      CHECK(recover_coefficients([&](const PolyVec& v) { return op_apply(D, v); }, f, r, nvars, 2) == D);
    }
  }
}

TEST_CASE("conjugate_glr examples") {
  const MatrixOperator D = worked_example(Q);
  CHECK(conjugate_glr(D, InvertiblePolyMatrix::identity(Q, 1, 2)) == D);

  const Poly x = support::x(Q);
  const Poly one = Poly::constant(Q, 1, 1), zero(Q, 1);
  const InvertiblePolyMatrix A(PolyMatrix::from_rows({{one, zero}, {x, one}}),
                               PolyMatrix::from_rows({{one, zero}, {-x, one}}));
  const ScalarOperator d = support::d1(Q), z(Q, 1);
  const MatrixOperator diag = grid({{d, z}, {z, d}});
  const MatrixOperator conj = conjugate_glr(diag, A);
  CHECK(conj == D);
  CHECK(conj.to_string() == "[ h(1,1) , 0 ]\n[ 1 , h(1,1) ]\n");

  const Poly c = Poly::constant(Q, 1, 3), ci = Poly::constant(Q, 1, 1) * parse_scalar(Q, "1/3");
  const InvertiblePolyMatrix scalar(PolyMatrix::from_rows({{c, zero}, {zero, c}}),
                                    PolyMatrix::from_rows({{ci, zero}, {zero, ci}}));
  CHECK(conjugate_glr(D, scalar) == D);
}

TEST_CASE("invertible witnesses are validated") {
  const Poly x = support::x(Q);
  const Poly one = Poly::constant(Q, 1, 1), zero(Q, 1);
  CHECK_THROWS_AS(InvertiblePolyMatrix(PolyMatrix::from_rows({{one, zero}, {x, one}}),
                                       PolyMatrix::from_rows({{one, zero}, {x, one}})),
                  InvariantError);
  CHECK_THROWS_AS(PolyAutomorphism({x * x}, {x}), InvariantError);
}

TEST_CASE("kernel vectors transport through conjugation") {
  SeededRng rng(26, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixOperator D = sample_family_member(FamilyMode::ZeroConstantTermTriangular, 2, 1, 2, 2, 26, trial, 5);
    const InvertiblePolyMatrix A = sample_unitriangular(1, 2, 2, 26, trial);
    const MatrixOperator C = conjugate_glr(D, A);
    CHECK(C.order() <= D.order());
    for (const auto& v : kernel_basis(D, 4)) CHECK(op_apply(C, A.inverse().apply(v)).is_zero());
  }
}

TEST_CASE("group action laws") {
  SeededRng rng(27, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const MatrixOperator D = support::random_op(Q, 1, 2, 2, 1, rng, 3);
    const InvertiblePolyMatrix A = sample_unitriangular(1, 2, 1, 27, 2 * trial);
    const InvertiblePolyMatrix B = sample_unitriangular(1, 2, 1, 27, 2 * trial + 1);
    CHECK(conjugate_glr(conjugate_glr(D, A), B) == conjugate_glr(D, A * B));
  }
  const FieldSpec f = Q;
  for (int trial = 0; trial < 5; ++trial) {
    const MatrixOperator D = support::random_op(f, 2, 1, 2, 1, rng, 3);
    const PolyAutomorphism g = elementary_automorphism(1, support::x(f, 2, 0) * Scalar(f, trial + 1));
    const PolyAutomorphism h = translation(f, 2, 0, Scalar(f, 2 - trial));
    CHECK(pullback_automorphism(pullback_automorphism(D, h), g) == pullback_automorphism(D, h.then(g)));
  }
}

TEST_CASE("pullback_automorphism examples") {
  const ScalarOperator d = support::d1(Q);
  const MatrixOperator D = MatrixOperator::from_entries({{d}});
  CHECK(pullback_automorphism(D, PolyAutomorphism::identity(Q, 1)) == D);
  CHECK(pullback_automorphism(D, translation(Q, 1, 0, Scalar(Q, 1))) == D);

  const MatrixOperator euler = MatrixOperator::from_entries({{compose(mul(support::x(Q)), d)}});
  CHECK(pullback_automorphism(euler, scaling(Q, 1, 0, Scalar(Q, 2))) == euler);

  const FieldSpec f5 = FieldSpec::prime(5);
  const MatrixOperator Dp = MatrixOperator::from_entries({{support::d1(f5)}});
  CHECK_THROWS_AS(pullback_automorphism(Dp, PolyAutomorphism::identity(f5, 1)), ConversionError);
}

TEST_CASE("operator printing") {
  const ScalarOperator d = support::d1(Q);
  ScalarOperator op = compose(mul(poly(Q, 1, {{{2}, 1}})), ScalarOperator::hasse(Q, MultiIndex{2}));
  op += ScalarOperator::multiplication(Poly::constant(Q, 1, 3));
  CHECK(op.to_string() == "x1^2*h(1,2) + 3");
  CHECK(ScalarOperator(Q, 1).to_string() == "0");
  CHECK((Scalar(Q, -1) * d).to_string() == "-h(1,1)");
  const ScalarOperator mixed = ScalarOperator::hasse(Q, MultiIndex{1, 2});
  CHECK(mixed.to_string() == "h(1,1)*h(2,2)");
}
