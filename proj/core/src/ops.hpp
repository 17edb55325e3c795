#pragma once

// Internal element-level kernels. Public code holds Matrix values; everything
// compute-heavy is templated on one of the two op sets below and instantiated
// per field kind at the dispatch boundary.

#include <cstdint>
#include <utility>
#include <vector>

#include "relhom/field.hpp"
#include "relhom/matrix.hpp"

namespace relhom::detail {

struct FpOps {
  using E = std::uint32_t;
  std::uint32_t p;
  std::uint64_t magic;  // floor(2^64 / p), for Barrett reduction

  static constexpr bool is_fp = true;

  explicit FpOps(std::uint32_t prime)
      : p(prime),
        magic(static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / prime)) {}

  E zero() const { return 0; }
  E one() const { return 1 % p; }
  bool is_zero(E a) const { return a == 0; }
  E add(E a, E b) const { return modarith::add(a, b, p); }
  E sub(E a, E b) const { return modarith::sub(a, b, p); }
  E mul(E a, E b) const {
    std::uint64_t prod = std::uint64_t(a) * b;
    std::uint64_t q = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(prod) * magic) >> 64);
    std::uint64_t r = prod - q * p;
    if (r >= p) r -= p;
    return static_cast<E>(r);
  }
  E neg(E a) const { return modarith::neg(a, p); }
  E inv(E a) const { return modarith::inv(a, p); }
  E from_scalar(const Scalar& s) const { return s.residue(); }
  Scalar to_scalar(E a, const Field& f) const { return Scalar::from_residue(f, a); }

  static std::vector<E>& data(Matrix& m) { return m.fp_; }
  static const std::vector<E>& data(const Matrix& m) { return m.fp_; }
};

struct RatOps {
  using E = mpq_class;

  static constexpr bool is_fp = false;

  E zero() const { return E(0); }
  E one() const { return E(1); }
  bool is_zero(const E& a) const { return sgn(a) == 0; }
  E add(const E& a, const E& b) const { return a + b; }
  E sub(const E& a, const E& b) const { return a - b; }
  E mul(const E& a, const E& b) const { return a * b; }
  E neg(const E& a) const { return -a; }
  E inv(const E& a) const { return E(1) / a; }
  E from_scalar(const Scalar& s) const { return s.rational(); }
  Scalar to_scalar(const E& a, const Field&) const { return Scalar::from_rational(a); }

  static std::vector<E>& data(Matrix& m) { return m.rat_; }
  static const std::vector<E>& data(const Matrix& m) { return m.rat_; }
};

template <class Fn>
decltype(auto) dispatch(const Field& f, Fn&& fn) {
  if (f.is_prime_field()) {
    return fn(FpOps(f.characteristic()));
  }
  return fn(RatOps{});
}

}  // namespace relhom::detail
