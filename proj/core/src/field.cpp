#include "relhom/field.hpp"

#include <sstream>

namespace relhom {

namespace modarith {

std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t(a) + b;
  if (s >= p) s -= p;
  return static_cast<std::uint32_t>(s);
}

std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t(a) + p - b);
}

std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t(a) * b % p);
}

std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  if (a == 0) throw std::domain_error("division by zero in F_p");
  // extended Euclid on (a, p)
  std::int64_t r0 = a, r1 = p, s0 = 1, s1 = 0;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  std::int64_t s = s0 % p;
  if (s < 0) s += p;
  return static_cast<std::uint32_t>(s);
}

std::uint32_t reduce_long(long v, std::uint32_t p) {
  long r = v % static_cast<long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace modarith

Field Field::prime(std::uint32_t p) {
  if (!modarith::is_prime(p)) {
    throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
  }
  return Field(p);
}

Field Field::rationals() { return Field(0); }

std::string Field::name() const {
  return is_prime_field() ? "F" + std::to_string(p_) : std::string("Q");
}

Scalar::Scalar(const Field& f, long value) : field_(f) {
  if (f.is_prime_field()) {
    v_ = modarith::reduce_long(value, f.characteristic());
  } else {
    v_ = mpq_class(value);
  }
}

Scalar Scalar::from_rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return Scalar(Field::rationals(), std::move(c));
}

Scalar Scalar::from_residue(const Field& f, std::uint32_t residue) {
  if (!f.is_prime_field()) throw std::invalid_argument("from_residue needs a prime field");
  return Scalar(f, residue % f.characteristic());
}

bool Scalar::is_zero() const {
  if (field_.is_prime_field()) return std::get<std::uint32_t>(v_) == 0;
  return sgn(std::get<mpq_class>(v_)) == 0;
}

bool Scalar::is_one() const {
  if (field_.is_prime_field())
    return std::get<std::uint32_t>(v_) == 1u % field_.characteristic();
  return std::get<mpq_class>(v_) == 1;
}

std::uint32_t Scalar::residue() const { return std::get<std::uint32_t>(v_); }

const mpq_class& Scalar::rational() const { return std::get<mpq_class>(v_); }

void Scalar::check_same(const Scalar& o) const {
  if (field_ != o.field_) throw std::invalid_argument("scalars from different fields");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  if (field_.is_prime_field())
    return Scalar(field_, modarith::add(residue(), o.residue(), field_.characteristic()));
  return Scalar(field_, mpq_class(rational() + o.rational()));
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  if (field_.is_prime_field())
    return Scalar(field_, modarith::sub(residue(), o.residue(), field_.characteristic()));
  return Scalar(field_, mpq_class(rational() - o.rational()));
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  if (field_.is_prime_field())
    return Scalar(field_, modarith::mul(residue(), o.residue(), field_.characteristic()));
  return Scalar(field_, mpq_class(rational() * o.rational()));
}

Scalar Scalar::operator-() const {
  if (field_.is_prime_field())
    return Scalar(field_, modarith::neg(residue(), field_.characteristic()));
  return Scalar(field_, mpq_class(-rational()));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (field_.is_prime_field())
    return Scalar(field_, modarith::inv(residue(), field_.characteristic()));
  return Scalar(field_, mpq_class(1 / rational()));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  if (a.field_.is_prime_field()) return a.residue() == b.residue();
  return a.rational() == b.rational();
}

std::string Scalar::str() const {
  if (field_.is_prime_field()) return std::to_string(residue());
  std::ostringstream os;
  os << rational();
  return os.str();
}

}  // namespace relhom
