#include "jetkernel/field.hpp"

#include <stdexcept>

#include "jetkernel/errors.hpp"

namespace jetkernel {

namespace {

std::uint64_t reduce_signed(long value, std::uint64_t p) {
  const long long m = static_cast<long long>(p);
  long long r = static_cast<long long>(value) % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t reduce_mpz(const mpz_class& value, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), p);
  return r.get_ui();
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  // extended Euclid on signed 64-bit values, a in [1, p)
  long long t = 0, new_t = 1;
  long long r = static_cast<long long>(p), new_r = static_cast<long long>(a);
  while (new_r != 0) {
    const long long q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += static_cast<long long>(p);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p > max_prime || !is_prime_number(p)) {
    throw std::invalid_argument("not an admissible prime modulus: " + std::to_string(p));
  }
  return FieldSpec(p);
}

std::string FieldSpec::name() const {
  return is_rational() ? std::string("Q") : "F_" + std::to_string(p_);
}

void require_same_field(const FieldSpec& a, const FieldSpec& b) {
  if (!(a == b)) throw FieldMismatchError("field mismatch: " + a.name() + " vs " + b.name());
}

Scalar::Scalar(const FieldSpec& field, long value) : field_(field) {
  if (field.is_rational()) {
    q_ = value;
  } else {
    r_ = reduce_signed(value, field.characteristic());
  }
}

Scalar Scalar::from_rational(const FieldSpec& field, const mpq_class& value) {
  Scalar s;
  s.field_ = field;
  if (field.is_rational()) {
    s.q_ = value;
    return s;
  }
  const std::uint64_t p = field.characteristic();
  const std::uint64_t den = reduce_mpz(value.get_den(), p);
  if (den == 0) {
    throw ReductionError("denominator of " + value.get_str() + " is divisible by " +
                         std::to_string(p));
  }
  const std::uint64_t num = reduce_mpz(value.get_num(), p);
  s.r_ = num * inverse_mod(den, p) % p;
  return s;
}

bool Scalar::is_zero() const { return field_.is_rational() ? sgn(q_) == 0 : r_ == 0; }

bool Scalar::is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

const mpq_class& Scalar::rational() const {
  if (!field_.is_rational()) throw FieldMismatchError("rational() on " + field_.name());
  return q_;
}

std::uint64_t Scalar::residue() const {
  if (field_.is_rational()) throw FieldMismatchError("residue() on Q");
  return r_;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (field_.is_rational()) {
    s.q_ = -q_;
  } else if (r_ != 0) {
    s.r_ = field_.characteristic() - r_;
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  require_same_field(field_, other.field_);
  if (field_.is_rational()) {
    q_ += other.q_;
  } else {
    r_ = (r_ + other.r_) % field_.characteristic();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  require_same_field(field_, other.field_);
  if (field_.is_rational()) {
    q_ -= other.q_;
  } else {
    const std::uint64_t p = field_.characteristic();
    r_ = (r_ + p - other.r_) % p;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  require_same_field(field_, other.field_);
  if (field_.is_rational()) {
    q_ *= other.q_;
  } else {
    r_ = r_ * other.r_ % field_.characteristic();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) { return *this *= other.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar s = *this;
  if (field_.is_rational()) {
    s.q_ = 1 / q_;
  } else {
    s.r_ = inverse_mod(r_, field_.characteristic());
  }
  return s;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::string Scalar::to_string() const {
  return field_.is_rational() ? q_.get_str() : std::to_string(r_);
}

Scalar parse_scalar(const FieldSpec& field, const std::string& text) {
  mpq_class value;
  std::string t = text;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || value.set_str(t, 10) != 0) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
  if (value.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  value.canonicalize();
  return Scalar::from_rational(field, value);
}

}  // namespace jetkernel
