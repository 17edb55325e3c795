#pragma once

// Incremental sparse row echelon over an exact field, plus the quotient-space
// view built on top of it. The dense Matrix type stays the public currency;
// this exists because the relation systems showing up in tensor/Hom
// constructions are large but extremely sparse and block-local, where dense
// elimination would be quadratic in memory for no reason.

#include <cstdint>
#include <queue>
#include <vector>

#include "ops.hpp"

namespace relhom::detail {

template <class Ops>
class SparseEchelon {
 public:
  using E = typename Ops::E;
  using SVec = std::vector<std::pair<std::uint32_t, E>>;  // sorted by index

  SparseEchelon(Ops ops, std::size_t ambient)
      : ops_(ops), ambient_(ambient), pivot_of_(ambient, -1), scratch_(ambient, ops.zero()),
        processed_(ambient, false) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }

  bool has_pivot(std::uint32_t idx) const { return pivot_of_[idx] >= 0; }

  /// Fully reduce v against the current rows. The residual is supported on
  /// non-pivot coordinates, sorted by index.
  SVec reduce(const SVec& v) {
    SVec out;
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
    std::vector<std::uint32_t> touched;
    auto scatter = [&](std::uint32_t idx, const E& val) {
      scratch_[idx] = ops_.add(scratch_[idx], val);
      touched.push_back(idx);
      heap.push(idx);
    };
    for (const auto& [idx, val] : v) scatter(idx, val);
    // Fill-in lands strictly above the pivot being eliminated, so processing
    // indices in ascending order visits each coordinate exactly once.
    while (!heap.empty()) {
      std::uint32_t idx = heap.top();
      heap.pop();
      if (processed_[idx]) continue;
      processed_[idx] = true;
      E val = scratch_[idx];
      if (ops_.is_zero(val)) continue;
      std::int64_t r = pivot_of_[idx];
      if (r < 0) {
        out.emplace_back(idx, val);
        continue;
      }
      const SVec& row = rows_[static_cast<std::size_t>(r)];
      for (std::size_t k = 1; k < row.size(); ++k)
        scatter(row[k].first, ops_.neg(ops_.mul(val, row[k].second)));
      scratch_[idx] = ops_.zero();
    }
    for (std::uint32_t t : touched) {
      scratch_[t] = ops_.zero();
      processed_[t] = false;
    }
    return out;
  }

  /// Reduce-then-insert. Returns true when the vector was independent.
  bool add(const SVec& v) {
    SVec r = reduce(v);
    if (r.empty()) return false;
    // normalize leading coefficient to 1
    E lead_inv = ops_.inv(r.front().second);
    for (auto& [idx, val] : r) val = ops_.mul(val, lead_inv);
    pivot_of_[r.front().first] = static_cast<std::int64_t>(rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }

  std::vector<std::uint32_t> free_coords() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < ambient_; ++i)
      if (pivot_of_[i] < 0) out.push_back(i);
    return out;
  }

  /// Given x with arbitrary values on free coordinates and zeros on pivots,
  /// fill the pivot coordinates so that every echelon row annihilates x.
  void back_substitute(std::vector<E>& x) const {
    for (std::uint32_t i = ambient_; i-- > 0;) {
      std::int64_t r = pivot_of_[i];
      if (r < 0) continue;
      const SVec& row = rows_[static_cast<std::size_t>(r)];
      E acc = ops_.zero();
      for (std::size_t k = 1; k < row.size(); ++k)
        acc = ops_.add(acc, ops_.mul(row[k].second, x[row[k].first]));
      x[i] = ops_.neg(acc);
    }
  }

 private:
  Ops ops_;
  std::size_t ambient_;
  std::vector<SVec> rows_;
  std::vector<std::int64_t> pivot_of_;
  std::vector<E> scratch_;
  std::vector<bool> processed_;
};

/// k^ambient modulo the span of a set of sparse relation vectors. Coset
/// representatives are the non-pivot coordinate vectors, so lift followed by
/// project is the identity on the quotient.
template <class Ops>
class QuotientView {
 public:
  using E = typename Ops::E;
  using SVec = typename SparseEchelon<Ops>::SVec;

  QuotientView(Ops ops, std::size_t ambient) : ops_(ops), ech_(ops, ambient) {}

  void add_relation(const SVec& v) { ech_.add(v); }

  void finalize() {
    free_ = ech_.free_coords();
    coord_of_.assign(ech_.ambient(), -1);
    for (std::size_t q = 0; q < free_.size(); ++q) coord_of_[free_[q]] = static_cast<std::int64_t>(q);
  }

  std::size_t dim() const { return free_.size(); }
  std::size_t ambient() const { return ech_.ambient(); }
  std::uint32_t lift_coord(std::size_t q) const { return free_[q]; }
  const std::vector<std::uint32_t>& lift_coords() const { return free_; }

  /// Ambient sparse vector -> quotient coordinates (sparse).
  SVec project(const SVec& v) {
    SVec red = ech_.reduce(v);
    for (auto& [idx, val] : red) idx = static_cast<std::uint32_t>(coord_of_[idx]);
    return red;
  }

  /// Rank of the span of the given ambient vectors inside the quotient:
  /// pivots gained over the relation echelon.
  std::size_t rank_of_image(const std::vector<SVec>& ambient_vecs) const {
    SparseEchelon<Ops> copy = ech_;
    std::size_t r = 0;
    for (const auto& v : ambient_vecs)
      if (copy.add(v)) ++r;
    return r;
  }

 private:
  Ops ops_;
  SparseEchelon<Ops> ech_;
  std::vector<std::uint32_t> free_;
  std::vector<std::int64_t> coord_of_;
};

/// Kernel of a sparse linear system: basis columns of {x : row . x = 0 for
/// every row}. Same pivot convention as the dense path (first nonzero, column
/// order), with back-substitution in descending pivot order.
template <class Ops>
Matrix sparse_kernel_basis(Ops ops, std::size_t ambient,
                           const std::vector<typename SparseEchelon<Ops>::SVec>& rows,
                           const Field& field) {
  SparseEchelon<Ops> ech(ops, ambient);
  for (const auto& r : rows) ech.add(r);
  auto free = ech.free_coords();
  Matrix out(field, ambient, free.size());
  auto& data = Ops::data(out);
  std::vector<typename Ops::E> x(ambient, ops.zero());
  for (std::size_t k = 0; k < free.size(); ++k) {
    for (auto& e : x) e = ops.zero();
    x[free[k]] = ops.one();
    ech.back_substitute(x);
    for (std::size_t i = 0; i < ambient; ++i)
      if (!ops.is_zero(x[i])) data[i * out.cols() + k] = x[i];
  }
  return out;
}

template <class Ops>
typename SparseEchelon<Ops>::SVec sparse_from_dense_column(const Ops& ops, const Matrix& m,
                                                           std::size_t j) {
  typename SparseEchelon<Ops>::SVec out;
  const auto& data = Ops::data(m);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto& e = data[i * m.cols() + j];
    if (!ops.is_zero(e)) out.emplace_back(static_cast<std::uint32_t>(i), e);
  }
  return out;
}

template <class Ops>
void add_dense_column(const Ops& ops, Matrix& m, std::size_t j,
                      const typename SparseEchelon<Ops>::SVec& v) {
  auto& data = Ops::data(m);
  for (const auto& [idx, val] : v) data[idx * m.cols() + j] = val;
}

}  // namespace relhom::detail
