#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace relhom {

/// Coefficient field descriptor: a prime field F_p (p < 2^31) or the rationals.
/// All arithmetic downstream is exact; there is no floating point anywhere.
class Field {
 public:
  static Field prime(std::uint32_t p);
  static Field rationals();

  bool is_prime_field() const { return p_ != 0; }
  std::uint32_t characteristic() const { return p_; }

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.p_ != b.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;  // 0 means Q
};

/// An exact field element. Boundary type only: bulk data lives inside Matrix.
class Scalar {
 public:
  Scalar(const Field& f, long value);
  static Scalar from_rational(const mpq_class& q);
  static Scalar from_residue(const Field& f, std::uint32_t residue);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  std::uint32_t residue() const;        // prime fields only
  const mpq_class& rational() const;    // rationals only

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;  // throws on zero

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const;

 private:
  Scalar(const Field& f, std::variant<std::uint32_t, mpq_class> v)
      : field_(f), v_(std::move(v)) {}
  void check_same(const Scalar& o) const;

  Field field_ = Field::rationals();
  std::variant<std::uint32_t, mpq_class> v_;
};

/// Modular helpers shared by the dense and sparse kernels.
namespace modarith {
std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t neg(std::uint32_t a, std::uint32_t p);
std::uint32_t inv(std::uint32_t a, std::uint32_t p);  // a != 0
std::uint32_t reduce_long(long v, std::uint32_t p);
bool is_prime(std::uint32_t n);
}  // namespace modarith

}  // namespace relhom
