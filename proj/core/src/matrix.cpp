#include "relhom/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "ops.hpp"

namespace relhom {

namespace {

void check_same_field(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw ShapeError("matrices over different fields");
}

template <class Ops>
void rref_in_place(const Ops& ops, std::vector<typename Ops::E>& a, std::size_t rows,
                   std::size_t cols, std::vector<std::size_t>& pivots) {
  pivots.clear();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t r = row; r < rows; ++r) {
      if (!ops.is_zero(a[r * cols + col])) {
        sel = r;
        break;
      }
    }
    if (sel == rows) continue;
    if (sel != row) {
      for (std::size_t c = col; c < cols; ++c) std::swap(a[sel * cols + c], a[row * cols + c]);
    }
    auto piv_inv = ops.inv(a[row * cols + col]);
    for (std::size_t c = col; c < cols; ++c)
      a[row * cols + c] = ops.mul(a[row * cols + c], piv_inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row) continue;
      auto f = a[r * cols + col];
      if (ops.is_zero(f)) continue;
      for (std::size_t c = col; c < cols; ++c)
        a[r * cols + c] = ops.sub(a[r * cols + c], ops.mul(f, a[row * cols + c]));
    }
    pivots.push_back(col);
    ++row;
  }
}

// forward elimination only, destroys `a`
template <class Ops>
std::size_t rank_in_place(const Ops& ops, std::vector<typename Ops::E>& a, std::size_t rows,
                          std::size_t cols) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t r = row; r < rows; ++r) {
      if (!ops.is_zero(a[r * cols + col])) {
        sel = r;
        break;
      }
    }
    if (sel == rows) continue;
    if (sel != row) {
      for (std::size_t c = col; c < cols; ++c) std::swap(a[sel * cols + c], a[row * cols + c]);
    }
    auto piv_inv = ops.inv(a[row * cols + col]);
    for (std::size_t r = row + 1; r < rows; ++r) {
      auto f = a[r * cols + col];
      if (ops.is_zero(f)) continue;
      f = ops.mul(f, piv_inv);
      a[r * cols + col] = ops.zero();
      for (std::size_t c = col + 1; c < cols; ++c)
        a[r * cols + c] = ops.sub(a[r * cols + c], ops.mul(f, a[row * cols + c]));
    }
    ++row;
  }
  return row;
}

}  // namespace

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols) {
  if (f.is_prime_field()) {
    fp_.assign(rows * cols, 0u);
  } else {
    rat_.assign(rows * cols, mpq_class(0));
  }
}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set_int(i, i, 1);
  return m;
}

Matrix Matrix::from_int_rows(const Field& f,
                             std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(f, r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("ragged rows in matrix literal");
    std::size_t j = 0;
    for (long v : row) m.set_int(i, j++, v);
    ++i;
  }
  return m;
}

Matrix Matrix::column(const Field& f, const std::vector<long>& entries) {
  Matrix m(f, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.set_int(i, 0, entries[i]);
  return m;
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw ShapeError("matrix index out of range");
  if (field_.is_prime_field()) return Scalar::from_residue(field_, fp_[r * cols_ + c]);
  return Scalar::from_rational(rat_[r * cols_ + c]);
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (r >= rows_ || c >= cols_) throw ShapeError("matrix index out of range");
  if (v.field() != field_) throw ShapeError("scalar from wrong field");
  if (field_.is_prime_field()) {
    fp_[r * cols_ + c] = v.residue();
  } else {
    rat_[r * cols_ + c] = v.rational();
  }
}

void Matrix::set_int(std::size_t r, std::size_t c, long v) { set(r, c, Scalar(field_, v)); }

bool Matrix::is_zero() const {
  return detail::dispatch(field_, [&](auto ops) {
    for (const auto& e : decltype(ops)::data(*this))
      if (!ops.is_zero(e)) return false;
    return true;
  });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(field_, rows_);
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_same_field(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("shape mismatch in +");
  Matrix out(field_, rows_, cols_);
  detail::dispatch(field_, [&](auto ops) {
    const auto& a = decltype(ops)::data(*this);
    const auto& b = decltype(ops)::data(o);
    auto& c = decltype(ops)::data(out);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = ops.add(a[i], b[i]);
  });
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_same_field(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("shape mismatch in -");
  Matrix out(field_, rows_, cols_);
  detail::dispatch(field_, [&](auto ops) {
    const auto& a = decltype(ops)::data(*this);
    const auto& b = decltype(ops)::data(o);
    auto& c = decltype(ops)::data(out);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = ops.sub(a[i], b[i]);
  });
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_same_field(*this, o);
  if (cols_ != o.rows_) throw ShapeError("shape mismatch in *");
  Matrix out(field_, rows_, o.cols_);
  detail::dispatch(field_, [&](auto ops) {
    const auto& a = decltype(ops)::data(*this);
    const auto& b = decltype(ops)::data(o);
    auto& c = decltype(ops)::data(out);
    const std::size_t n = o.cols_;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& aik = a[i * cols_ + k];
        if (ops.is_zero(aik)) continue;
        for (std::size_t j = 0; j < n; ++j)
          c[i * n + j] = ops.add(c[i * n + j], ops.mul(aik, b[k * n + j]));
      }
    }
  });
  return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix out(field_, rows_, cols_);
  detail::dispatch(field_, [&](auto ops) {
    const auto& a = decltype(ops)::data(*this);
    auto& c = decltype(ops)::data(out);
    auto f = ops.from_scalar(s);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = ops.mul(a[i], f);
  });
  return out;
}

Matrix Matrix::operator-() const { return scaled(Scalar(field_, -1)); }

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  detail::dispatch(field_, [&](auto ops) {
    const auto& a = decltype(ops)::data(*this);
    auto& c = decltype(ops)::data(out);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) c[j * rows_ + i] = a[i * cols_ + j];
  });
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.field_ != b.field_ || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (a.field_.is_prime_field()) return a.fp_ == b.fp_;
  return a.rat_ == b.rat_;
}

Matrix Matrix::col_slice(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw ShapeError("column slice out of range");
  Matrix out(field_, rows_, count);
  detail::dispatch(field_, [&](auto ops) {
    const auto& a = decltype(ops)::data(*this);
    auto& o = decltype(ops)::data(out);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) o[i * count + j] = a[i * cols_ + first + j];
  });
  return out;
}

Matrix Matrix::column_at(std::size_t j) const { return col_slice(j, 1); }

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.rows_ != b.rows_) throw ShapeError("hstack row mismatch");
  Matrix out(a.field_, a.rows_, a.cols_ + b.cols_);
  detail::dispatch(a.field_, [&](auto ops) {
    const auto& da = decltype(ops)::data(a);
    const auto& db = decltype(ops)::data(b);
    auto& o = decltype(ops)::data(out);
    const std::size_t oc = a.cols_ + b.cols_;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) o[i * oc + j] = da[i * a.cols_ + j];
      for (std::size_t j = 0; j < b.cols_; ++j) o[i * oc + a.cols_ + j] = db[i * b.cols_ + j];
    }
  });
  return out;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.cols_ != b.cols_) throw ShapeError("vstack column mismatch");
  Matrix out(a.field_, a.rows_ + b.rows_, a.cols_);
  detail::dispatch(a.field_, [&](auto ops) {
    const auto& da = decltype(ops)::data(a);
    const auto& db = decltype(ops)::data(b);
    auto& o = decltype(ops)::data(out);
    std::copy(da.begin(), da.end(), o.begin());
    std::copy(db.begin(), db.end(), o.begin() + static_cast<long>(da.size()));
  });
  return out;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
  }
  os << "]";
  return os.str();
}

RrefResult rref(const Matrix& m) {
  RrefResult res;
  res.reduced = m;
  detail::dispatch(m.field(), [&](auto ops) {
    rref_in_place(ops, decltype(ops)::data(res.reduced), m.rows(), m.cols(), res.pivots);
  });
  return res;
}

std::size_t rank(const Matrix& m) {
  Matrix work = m;
  return detail::dispatch(m.field(), [&](auto ops) {
    return rank_in_place(ops, decltype(ops)::data(work), m.rows(), m.cols());
  });
}

Matrix kernel_basis(const Matrix& m) {
  RrefResult r = rref(m);
  const std::size_t n = m.cols();
  std::vector<std::size_t> free_cols;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  Matrix out(m.field(), n, free_cols.size());
  detail::dispatch(m.field(), [&](auto ops) {
    const auto& red = decltype(ops)::data(r.reduced);
    auto& o = decltype(ops)::data(out);
    const std::size_t oc = free_cols.size();
    for (std::size_t k = 0; k < oc; ++k) {
      std::size_t fc = free_cols[k];
      o[fc * oc + k] = ops.one();
      for (std::size_t pi = 0; pi < r.pivots.size(); ++pi) {
        // pivot row pi gives x_{pivot} = -sum over free columns
        const auto& v = red[pi * n + fc];
        if (!ops.is_zero(v)) o[r.pivots[pi] * oc + k] = ops.neg(v);
      }
    }
  });
  return out;
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  if (m.rows() != b.rows()) throw ShapeError("solve: row mismatch");
  RrefResult r = rref(Matrix::hstack(m, b));
  // inconsistent iff some pivot lands in the b block
  for (std::size_t p : r.pivots) {
    if (p >= m.cols()) return std::nullopt;
  }
  Matrix x(m.field(), m.cols(), b.cols());
  for (std::size_t pi = 0; pi < r.pivots.size(); ++pi) {
    for (std::size_t j = 0; j < b.cols(); ++j)
      x.set(r.pivots[pi], j, r.reduced.at(pi, m.cols() + j));
  }
  return x;
}

Matrix image_basis(const Matrix& m) {
  RrefResult r = rref(m);
  Matrix out(m.field(), m.rows(), r.pivots.size());
  for (std::size_t k = 0; k < r.pivots.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) out.set(i, k, m.at(i, r.pivots[k]));
  return out;
}

Matrix intersect_columns(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.rows() != b.rows()) throw ShapeError("intersect_columns: ambient mismatch");
  // kernel of [A | -B]: pairs (x, y) with A x = B y
  Matrix stacked = Matrix::hstack(a, -b);
  Matrix ker = kernel_basis(stacked);
  Matrix xs(a.field(), a.cols(), ker.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < ker.cols(); ++j) xs.set(i, j, ker.at(i, j));
  return image_basis(a * xs);
}

QuotientBasis quotient_basis(std::size_t ambient_dim, const Matrix& subspace) {
  if (subspace.rows() != ambient_dim) throw ShapeError("quotient_basis: ambient mismatch");
  // Row-reduce the subspace transposed; non-pivot coordinates represent the quotient.
  RrefResult r = rref(subspace.transpose());
  const Field& f = subspace.field();
  std::vector<bool> is_pivot(ambient_dim, false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_coords;
  for (std::size_t j = 0; j < ambient_dim; ++j)
    if (!is_pivot[j]) free_coords.push_back(j);

  const std::size_t q = free_coords.size();
  QuotientBasis out{Matrix(f, q, ambient_dim), Matrix(f, ambient_dim, q)};
  // projection: eliminate pivot coordinates via the reduced rows, then read
  // off the free ones. For a reduced row with pivot p: e_p == -sum over free
  // coords of that row (mod subspace), so projection(e_p) picks up -row.
  detail::dispatch(f, [&](auto ops) {
    const auto& red = decltype(ops)::data(r.reduced);
    auto& proj = decltype(ops)::data(out.projection);
    auto& reps = decltype(ops)::data(out.representatives);
    for (std::size_t k = 0; k < q; ++k) {
      proj[k * ambient_dim + free_coords[k]] = ops.one();
      reps[free_coords[k] * q + k] = ops.one();
    }
    for (std::size_t pi = 0; pi < r.pivots.size(); ++pi) {
      for (std::size_t k = 0; k < q; ++k) {
        const auto& v = red[pi * ambient_dim + free_coords[k]];
        if (!ops.is_zero(v)) proj[k * ambient_dim + r.pivots[pi]] = ops.neg(v);
      }
    }
  });
  return out;
}

}  // namespace relhom
