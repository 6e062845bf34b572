#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "jetkernel/operators.hpp"
#include "jetkernel/poly.hpp"

namespace jetkernel {

/// Element of the truncated jet algebra k[x][dx] / (dx)^(N+1), stored as
/// dx-monomial -> x-polynomial coefficient.
class JetElement {
 public:
  using TermMap = std::map<MultiIndex, Poly, GrlexLess>;

  JetElement() = default;
  /// Zero element.
  JetElement(const FieldSpec& field, std::size_t nvars, std::size_t order);

  /// f * dx^0.
  static JetElement from_poly(const Poly& f, std::size_t order);
  /// The generator dx_{var+1}.
  static JetElement dx(const FieldSpec& field, std::size_t nvars, std::size_t var, std::size_t order);

  const FieldSpec& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Poly coeff(const MultiIndex& dx_index) const;
  /// Adds c * dx^dx_index; terms past the truncation order are dropped.
  void add_term(const MultiIndex& dx_index, const Poly& c);

  JetElement& operator+=(const JetElement& other);
  JetElement& operator-=(const JetElement& other);
  friend JetElement operator+(JetElement a, const JetElement& b) { return a += b; }
  friend JetElement operator-(JetElement a, const JetElement& b) { return a -= b; }
  /// Product truncated at the common order.
  friend JetElement operator*(const JetElement& a, const JetElement& b);
  friend bool operator==(const JetElement& a, const JetElement& b);

  /// Forgets every dx-degree above new_order (new_order <= order()).
  JetElement truncated(std::size_t new_order) const;
  JetElement to_field(const FieldSpec& target) const;

  std::string to_string() const;

 private:
  void check_compatible(const JetElement& other) const;

  FieldSpec field_;
  std::size_t nvars_ = 0;
  std::size_t order_ = 0;
  TermMap terms_;
};

/// f(x + dx) mod (dx)^(N+1), computed by substituting x_i -> x_i + dx_i
/// inside the jet algebra.
JetElement taylor_jet(const Poly& f, std::size_t order);

/// O-linear map J^N(k[x]^r) -> k[x]^r, given by the images of the basis
/// elements dx^I e_j in every output row i.
class JetLinearMap {
 public:
  struct Key {
    MultiIndex dx;
    std::size_t column;
    std::size_t row;
    friend bool operator<(const Key& a, const Key& b) {
      if (a.column != b.column) return a.column < b.column;
      if (a.row != b.row) return a.row < b.row;
      return GrlexLess{}(a.dx, b.dx);
    }
    friend bool operator==(const Key&, const Key&) = default;
  };

  JetLinearMap() = default;
  JetLinearMap(const FieldSpec& field, std::size_t nvars, std::size_t r, std::size_t order);

  const FieldSpec& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t rank() const { return r_; }
  std::size_t order() const { return order_; }
  const std::map<Key, Poly>& images() const { return images_; }

  /// Throws DimensionError when |dx| exceeds the order or indices are out of range.
  void set_image(const MultiIndex& dx_index, std::size_t column, std::size_t row, const Poly& value);
  Poly image(const MultiIndex& dx_index, std::size_t column, std::size_t row) const;

  /// Evaluates the map on one jet per input component.
  PolyVec apply(const std::vector<JetElement>& jets) const;

  friend bool operator==(const JetLinearMap& a, const JetLinearMap& b) = default;

 private:
  FieldSpec field_;
  std::size_t nvars_ = 0;
  std::size_t r_ = 0;
  std::size_t order_ = 0;
  std::map<Key, Poly> images_;
};

/// images[(I, j, i)] = a_{I,i,j}; truncation order is the operator order (0 for the zero operator).
JetLinearMap op_to_jet_map(const MatrixOperator& op);
MatrixOperator jet_map_to_op(const JetLinearMap& map);
/// T applied entrywise to taylor_jet(v_j, order(T)); equals op_apply for the corresponding operator.
PolyVec apply_through_jets(const JetLinearMap& map, const PolyVec& v);

struct RelationGenerator {
  Poly relator;
  /// d^1 f = taylor_jet(f) - f.
  JetElement differential;
  friend bool operator==(const RelationGenerator&, const RelationGenerator&) = default;
};

/// Presentation data of J^N(k[x]/(f_1..f_m)): the relations (dx)^(N+1) plus
/// the pairs (f_j, d^1 f_j).
struct JetPresentation {
  FieldSpec field;
  std::size_t nvars = 0;
  std::size_t order = 0;
  std::vector<RelationGenerator> generators;

  /// Number of monomial generators of (dx)^(N+1).
  std::size_t power_relation_count() const;
  friend bool operator==(const JetPresentation&, const JetPresentation&) = default;
};

JetPresentation jet_presentation(const std::vector<Poly>& relators, std::size_t order);

struct BaseChangeReport {
  bool equal = false;
  std::uint64_t prime = 0;
  JetPresentation reduced_from_rationals;
  JetPresentation native;
  /// Indices of relators whose data differ.
  std::vector<std::size_t> mismatches;
};

/// Builds the presentation over Q and reduces it mod p, then builds it
/// natively from the reduced relators over F_p, and compares normal forms.
/// Relators must be over Q with integer coefficients and share nvars
/// (nvars is needed for the empty relator list).
BaseChangeReport base_change_check(const std::vector<Poly>& relators, std::size_t nvars, std::size_t order,
                                   std::uint64_t p);

}  // namespace jetkernel
