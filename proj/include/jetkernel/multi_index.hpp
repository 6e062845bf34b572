#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "jetkernel/field.hpp"

namespace jetkernel {

/// Exponent or derivative vector over n variables.
class MultiIndex {
 public:
  using value_type = std::uint32_t;

  MultiIndex() = default;
  /// The zero index of length nvars.
  explicit MultiIndex(std::size_t nvars) : e_(nvars, 0) {}
  explicit MultiIndex(std::vector<value_type> exponents) : e_(std::move(exponents)) {}
  MultiIndex(std::initializer_list<value_type> exponents) : e_(exponents) {}

  static MultiIndex unit(std::size_t nvars, std::size_t var, value_type power = 1);

  std::size_t size() const { return e_.size(); }
  value_type operator[](std::size_t k) const { return e_[k]; }
  value_type& operator[](std::size_t k) { return e_[k]; }
  const std::vector<value_type>& exponents() const { return e_; }

  /// |I|, the total degree.
  std::size_t total() const;
  bool is_zero() const;

  /// Componentwise I <= J.
  bool divides(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// Throws DimensionError unless other divides *this.
  MultiIndex operator-(const MultiIndex& other) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  std::string to_string() const;

 private:
  std::vector<value_type> e_;
};

/// Graded lexicographic order: total degree first, then lexicographic
/// exponent comparison (so x1 > x2 among degree-one monomials).
struct GrlexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All multi-indices of length nvars with total degree <= max_degree,
/// in ascending graded-lex order. Size is C(nvars + max_degree, nvars).
std::vector<MultiIndex> indices_up_to(std::size_t nvars, std::size_t max_degree);

/// All multi-indices of length nvars with total degree exactly `degree`, ascending.
std::vector<MultiIndex> indices_of_degree(std::size_t nvars, std::size_t degree);

/// Exact binomial C(n, k) as an integer.
mpz_class binomial(std::size_t n, std::size_t k);

/// prod_k C(J_k, I_k) reduced into the field; zero whenever I <= J fails.
Scalar multi_binomial(const FieldSpec& field, const MultiIndex& upper, const MultiIndex& lower);

/// I! = prod_k I_k! as an integer.
mpz_class multi_factorial(const MultiIndex& index);

}  // namespace jetkernel
