#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "relhom/field.hpp"

namespace relhom {

namespace detail {
struct FpOps;
struct RatOps;
}  // namespace detail

/// Incompatible shapes or mixed fields in a matrix operation.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RrefResult;
struct QuotientBasis;

/// Dense matrix over an exact field. Immutable in spirit: the linear algebra
/// entry points below return fresh values; only set() mutates, and callers
/// treat matrices as frozen once built.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, std::size_t rows, std::size_t cols);  // zero-filled

  static Matrix identity(const Field& f, std::size_t n);
  static Matrix zero(const Field& f, std::size_t rows, std::size_t cols) {
    return Matrix(f, rows, cols);
  }
  /// Row-major integer literals, mapped into the field.
  static Matrix from_int_rows(const Field& f,
                              std::initializer_list<std::initializer_list<long>> rows);
  static Matrix column(const Field& f, const std::vector<long>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& v);
  void set_int(std::size_t r, std::size_t c, long v);

  bool is_zero() const;
  bool is_identity() const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Matrix operator-() const;
  Matrix transpose() const;
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix col_slice(std::size_t first, std::size_t count) const;
  Matrix column_at(std::size_t j) const;
  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);

  std::string str() const;  // small matrices, for messages and debugging

 private:
  friend struct detail::FpOps;
  friend struct detail::RatOps;

  Field field_ = Field::rationals();
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint32_t> fp_;   // active for prime fields
  std::vector<mpq_class> rat_;      // active for Q
};

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // strictly increasing pivot columns
};

/// Reduced row echelon form. Deterministic: pivots are the first nonzero
/// entry scanning columns left to right, rows top to bottom.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Columns spanning the null space {x : m x = 0}; cols() - rank(m) of them.
Matrix kernel_basis(const Matrix& m);

/// First solution of m x = b (free variables set to zero), or nullopt when
/// b is outside the column space.
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

/// The pivot columns of m itself: an independent spanning set of the column space.
Matrix image_basis(const Matrix& m);

/// Basis of (column space of a) .. (column space of b).
Matrix intersect_columns(const Matrix& a, const Matrix& b);

struct QuotientBasis {
  Matrix projection;       // q x n, kills the subspace
  Matrix representatives;  // n x q coset representatives; projection * representatives = id
};

/// Quotient of k^ambient_dim by the column span of `subspace`.
QuotientBasis quotient_basis(std::size_t ambient_dim, const Matrix& subspace);

}  // namespace relhom
