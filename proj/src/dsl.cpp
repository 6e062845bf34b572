#include "jetkernel/dsl.hpp"

#include <cctype>
#include <limits>
#include <vector>

#include <gmpxx.h>

#include "jetkernel/errors.hpp"

namespace jetkernel {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars, const FieldSpec& field)
      : text_(text), nvars_(nvars), field_(field) {
    if (nvars == 0) throw DimensionError("operators need at least one variable");
  }

  MatrixOperator matrix() {
    skip_space();
    if (peek() != '[') {
      ScalarOperator single = expr();
      expect_end();
      return MatrixOperator::from_entries({{single}});
    }
    std::vector<std::vector<ScalarOperator>> rows;
    while (peek() == '[') {
      const std::size_t row_start = pos_;
      ++pos_;
      std::vector<ScalarOperator> row{expr()};
      while (peek() == ',') {
        ++pos_;
        row.push_back(expr());
      }
      expect(']');
      if (!rows.empty() && row.size() != rows.front().size()) {
        throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " +
                             std::to_string(rows.front().size()),
                         row_start);
      }
      rows.push_back(std::move(row));
      skip_space();
    }
    expect_end();
    if (rows.size() != rows.front().size()) {
      throw ParseError("operator matrix must be square, got " + std::to_string(rows.size()) + " rows of " +
                           std::to_string(rows.front().size()),
                       0);
    }
    return MatrixOperator::from_entries(rows);
  }

  ScalarOperator scalar() {
    ScalarOperator op = expr();
    expect_end();
    return op;
  }

 private:
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'" + found(), pos_);
    ++pos_;
  }

  void expect_end() {
    if (peek() != '\0') throw ParseError("unexpected trailing input" + found(), pos_);
  }

  std::string found() const {
    if (pos_ >= text_.size()) return ", found end of input";
    return std::string(", found '") + text_[pos_] + "'";
  }

  std::string digits() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected a number" + found(), pos_);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t small_number() {
    const std::size_t start = pos_;
    const std::string d = digits();
    if (d.size() > 6) throw ParseError("number too large", start);
    return std::stoul(d);
  }

  std::size_t variable_index() {
    skip_space();
    const std::size_t start = pos_;
    const std::size_t i = small_number();
    if (i == 0 || i > nvars_) {
      throw ParseError("variable index " + std::to_string(i) + " outside 1.." + std::to_string(nvars_), start);
    }
    return i - 1;
  }

  ScalarOperator expr() {
    ScalarOperator acc(field_, nvars_);
    char sign = '+';
    if (peek() == '+' || peek() == '-') sign = text_[pos_++];
    while (true) {
      ScalarOperator t = term();
      if (sign == '+') {
        acc += t;
      } else {
        acc -= t;
      }
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      sign = c;
      ++pos_;
    }
  }

  ScalarOperator term() {
    ScalarOperator acc = factor();
    while (peek() == '*') {
      ++pos_;
      acc = compose(acc, factor());
    }
    return acc;
  }

  ScalarOperator factor() {
    ScalarOperator base = atom();
    while (peek() == '^') {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      const std::size_t e = small_number();
      if (e == 0) throw ParseError("exponent must be positive", start);
      ScalarOperator power = base;
      for (std::size_t k = 1; k < e; ++k) power = compose(power, base);
      base = std::move(power);
    }
    return base;
  }

  ScalarOperator atom() {
    const char c = peek();
    const std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(c))) return rational();
    if (c == '(') {
      ++pos_;
      ScalarOperator inner = expr();
      expect(')');
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      return ScalarOperator::multiplication(Poly::variable(field_, nvars_, variable_index()));
    }
    if (c == 'h') {
      ++pos_;
      expect('(');
      const std::size_t var = variable_index();
      expect(',');
      skip_space();
      const auto order = static_cast<std::uint32_t>(small_number());
      expect(')');
      return ScalarOperator::hasse(field_, MultiIndex::unit(nvars_, var, order));
    }
    if (c == 'd') {
      ++pos_;
      expect('(');
      const std::size_t var = variable_index();
      expect(')');
      if (!field_.is_rational()) {
        throw ParseError("classical derivative d(" + std::to_string(var + 1) + ") needs characteristic 0; use h(" +
                             std::to_string(var + 1) + ",k) over " + field_.name(),
                         start);
      }
      std::map<MultiIndex, Poly, GrlexLess> classical;
      classical.emplace(MultiIndex::unit(nvars_, var), Poly::constant(field_, nvars_, 1));
      return classical_to_hasse(field_, nvars_, classical);
    }
    throw ParseError("expected a number, x<i>, h(i,k), d(i) or '('" + found(), pos_);
  }

  ScalarOperator rational() {
    const std::size_t start = pos_;
    mpq_class value{mpz_class(digits())};
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      const std::size_t den_start = pos_;
      mpz_class den(digits());
      if (den == 0) throw ParseError("zero denominator", den_start);
      value = mpq_class(value.get_num(), den);
      value.canonicalize();
    }
    try {
      return ScalarOperator::multiplication(Poly::constant(field_, nvars_, Scalar::from_rational(field_, value)));
    } catch (const ReductionError& e) {
      throw ParseError(e.what(), start);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t nvars_;
  FieldSpec field_;
};

}  // namespace

ScalarOperator parse_scalar_operator(std::string_view text, std::size_t nvars, const FieldSpec& field) {
  return Parser(text, nvars, field).scalar();
}

MatrixOperator parse_operator(std::string_view text, std::size_t nvars, const FieldSpec& field) {
  return Parser(text, nvars, field).matrix();
}

std::string format_operator(const MatrixOperator& op) { return op.to_string(); }

FieldSpec parse_field(std::string_view text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  if (t == "Q" || t == "QQ" || t == "RATIONALS" || t == "RATIONAL") return FieldSpec::rationals();
  std::string digits = t;
  if (t.rfind("F_", 0) == 0) {
    digits = t.substr(2);
  } else if (t.rfind("GF(", 0) == 0 && t.back() == ')') {
    digits = t.substr(3, t.size() - 4);
  } else if (t.rfind("F", 0) == 0) {
    digits = t.substr(1);
  }
  if (digits.empty() || digits.size() > 10 ||
      digits.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("unknown field '" + std::string(text) + "'");
  }
  return FieldSpec::prime(std::stoull(digits));
}

}  // namespace jetkernel
