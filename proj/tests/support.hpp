#pragma once

#include <cstdint>

#include "jetkernel/families.hpp"
#include "jetkernel/suites.hpp"

namespace support {

using namespace jetkernel;

inline Poly poly(const FieldSpec& f, std::size_t nvars, std::initializer_list<std::pair<MultiIndex, long>> terms) {
  Poly p(f, nvars);
  for (const auto& [m, c] : terms) p.add_term(m, Scalar(f, c));
  return p;
}

inline Poly x(const FieldSpec& f, std::size_t nvars = 1, std::size_t var = 0) { return Poly::variable(f, nvars, var); }

inline ScalarOperator d1(const FieldSpec& f) { return ScalarOperator::hasse(f, MultiIndex{1}); }

/// Random scalar operator of order <= order with coefficients of degree <= deg.
inline ScalarOperator random_scalar_op(const FieldSpec& f, std::size_t nvars, std::size_t order, std::size_t deg,
                                       SeededRng& rng, long bound = 5) {
  ScalarOperator op(f, nvars);
  for (const auto& i : indices_up_to(nvars, order)) op.add_term(i, sample_poly(f, nvars, deg, rng, bound));
  return op;
}

inline MatrixOperator random_op(const FieldSpec& f, std::size_t nvars, std::size_t r, std::size_t order,
                                std::size_t deg, SeededRng& rng, long bound = 5) {
  MatrixOperator op(f, nvars, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) op.set(i, j, random_scalar_op(f, nvars, order, deg, rng, bound));
  }
  return op;
}

}  // namespace support
