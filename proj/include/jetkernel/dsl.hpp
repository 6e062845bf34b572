#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "jetkernel/operators.hpp"

namespace jetkernel {

/// Operator expressions:
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' posint)*
///   atom   := rational | 'x' i | 'h(' i ',' k ')' | 'd(' i ')' | '(' expr ')'
///
/// Products compose, so "h(1,1)*x1" is x1*h(1,1) + 1. h(i,k) is the Hasse
/// derivative d^[k e_i]; d(i) is the classical d/dx_i and only exists over Q.
/// Positions in ParseError are 0-based byte offsets into the text.
ScalarOperator parse_scalar_operator(std::string_view text, std::size_t nvars, const FieldSpec& field);

/// A single expression gives a 1x1 operator; otherwise the text is a list of
/// rows "[ e , e ] [ e , e ]" (whitespace and newlines are free).
MatrixOperator parse_operator(std::string_view text, std::size_t nvars, const FieldSpec& field);

/// Inverse of parse_operator up to whitespace.
std::string format_operator(const MatrixOperator& op);

/// "Q", "QQ", "rationals", "F_p", "GF(p)" or a bare prime p.
FieldSpec parse_field(std::string_view text);

}  // namespace jetkernel
