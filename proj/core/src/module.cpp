#include "relhom/module.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "echelon.hpp"
#include "ops.hpp"
#include "util.hpp"

namespace relhom {

namespace detail {

Matrix flatten_row_major(const Matrix& m) {
  Matrix out(m.field(), m.rows() * m.cols(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.set(i * m.cols() + j, 0, m.at(i, j));
  return out;
}

Matrix unflatten_row_major(const Matrix& v, std::size_t rows, std::size_t cols) {
  Matrix out(v.field(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, v.at(i * cols + j, 0));
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Scalar aij = a.at(i, j);
      if (aij.is_zero()) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) {
          Scalar v = aij * b.at(r, c);
          if (!v.is_zero()) out.set(i * b.rows() + r, j * b.cols() + c, v);
        }
    }
  return out;
}

Matrix express_in_basis(const Matrix& B, const Matrix& W, bool verify) {
  // Kernel-style bases have a unit row per column; use it as a section.
  std::vector<std::size_t> section(B.cols(), B.rows());
  bool have_section = true;
  detail::dispatch(B.field(), [&](auto ops) {
    const auto& data = decltype(ops)::data(B);
    std::vector<std::size_t> nonzeros(B.rows(), 0);
    std::vector<std::size_t> last_col(B.rows(), 0);
    for (std::size_t i = 0; i < B.rows(); ++i)
      for (std::size_t j = 0; j < B.cols(); ++j)
        if (!ops.is_zero(data[i * B.cols() + j])) {
          ++nonzeros[i];
          last_col[i] = j;
        }
    auto one = ops.one();
    for (std::size_t i = 0; i < B.rows(); ++i)
      if (nonzeros[i] == 1 && data[i * B.cols() + last_col[i]] == one &&
          section[last_col[i]] == B.rows())
        section[last_col[i]] = i;
  });
  for (std::size_t k = 0; k < B.cols(); ++k)
    if (section[k] == B.rows()) have_section = false;
  if (have_section) {
    Matrix coords(B.field(), B.cols(), W.cols());
    detail::dispatch(B.field(), [&](auto ops) {
      const auto& w = decltype(ops)::data(W);
      auto& o = decltype(ops)::data(coords);
      for (std::size_t k = 0; k < B.cols(); ++k)
        for (std::size_t j = 0; j < W.cols(); ++j) o[k * W.cols() + j] = w[section[k] * W.cols() + j];
    });
    if (!verify || B * coords == W) return coords;
  }
  auto sol = solve(B, W);
  if (!sol) throw ModuleInvariantError("vector outside the expected span");
  return *sol;
}

Matrix free_action_apply(const AlgebraPtr& R, const Matrix& element, const Matrix& V,
                         std::size_t gens) {
  const std::size_t d = R->dim();
  if (V.rows() != gens * d) throw ShapeError("free_action_apply: block mismatch");
  Matrix L = R->multiplication_matrix(element);
  Matrix out(R->field(), V.rows(), V.cols());
  detail::dispatch(R->field(), [&](auto ops) {
    const auto& lm = decltype(ops)::data(L);
    const auto& v = decltype(ops)::data(V);
    auto& o = decltype(ops)::data(out);
    const std::size_t cols = V.cols();
    for (std::size_t blk = 0; blk < gens; ++blk) {
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
          const auto& lik = lm[i * d + k];
          if (ops.is_zero(lik)) continue;
          const std::size_t src = (blk * d + k) * cols;
          const std::size_t dst = (blk * d + i) * cols;
          for (std::size_t c = 0; c < cols; ++c) {
            if (ops.is_zero(v[src + c])) continue;
            o[dst + c] = ops.add(o[dst + c], ops.mul(lik, v[src + c]));
          }
        }
      }
    }
  });
  return out;
}

std::vector<Matrix> induced_subspace_actions(const FDModule& M, const Matrix& B) {
  std::vector<Matrix> out;
  out.reserve(M.ring()->dim());
  for (std::size_t i = 0; i < M.ring()->dim(); ++i)
    out.push_back(express_in_basis(B, M.action(i) * B));
  return out;
}

std::optional<std::vector<std::size_t>> unit_column_indices(const Matrix& reps) {
  std::vector<std::size_t> out(reps.cols(), reps.rows());
  bool ok = true;
  detail::dispatch(reps.field(), [&](auto ops) {
    const auto& data = decltype(ops)::data(reps);
    auto one = ops.one();
    for (std::size_t i = 0; i < reps.rows() && ok; ++i)
      for (std::size_t j = 0; j < reps.cols(); ++j) {
        const auto& v = data[i * reps.cols() + j];
        if (ops.is_zero(v)) continue;
        if (!(v == one) || out[j] != reps.rows()) {
          ok = false;
          break;
        }
        out[j] = i;
      }
  });
  if (!ok) return std::nullopt;
  for (std::size_t j = 0; j < reps.cols(); ++j)
    if (out[j] == reps.rows()) return std::nullopt;
  return out;
}

Matrix apply_representatives(const Matrix& B, const Matrix& reps) {
  auto idx = unit_column_indices(reps);
  if (!idx) return B * reps;
  Matrix out(B.field(), B.rows(), reps.cols());
  detail::dispatch(B.field(), [&](auto ops) {
    const auto& b = decltype(ops)::data(B);
    auto& o = decltype(ops)::data(out);
    for (std::size_t i = 0; i < B.rows(); ++i)
      for (std::size_t j = 0; j < reps.cols(); ++j) o[i * reps.cols() + j] = b[i * B.cols() + (*idx)[j]];
  });
  return out;
}

ModulePtr power_module(const ModulePtr& N, std::size_t b) {
  const Field f = N->ring()->field();
  const std::size_t n = N->dim();
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < N->ring()->dim(); ++i) {
    Matrix a(f, n * b, n * b);
    for (std::size_t blk = 0; blk < b; ++blk)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          Scalar v = N->action(i).at(r, c);
          if (!v.is_zero()) a.set(blk * n + r, blk * n + c, v);
        }
    actions.push_back(std::move(a));
  }
  return FDModule::create(N->ring(), n * b, std::move(actions), false);
}

}  // namespace detail

namespace {

using detail::express_in_basis;
using detail::flatten_row_major;
using detail::induced_subspace_actions;
using detail::kron;
using detail::unflatten_row_major;

void check_ring(const ModulePtr& a, const ModulePtr& b) {
  if (!same_ring(a->ring(), b->ring())) throw RingMismatch("modules over different rings");
}

std::uint64_t iso_search_seed(std::size_t a, std::size_t b, std::size_t h) {
  return 0x52454C484F4Dull * 1099511628211ull + a * 1000003 + b * 10007 + h;
}

}  // namespace

ModulePtr FDModule::create(AlgebraPtr ring, std::size_t dim, std::vector<Matrix> actions,
                           bool check) {
  auto m = ModulePtr(new FDModule(std::move(ring), dim, std::move(actions)));
  if (check) m->validate();
  return m;
}

Matrix FDModule::action_of(const Matrix& element) const {
  Matrix out(ring_->field(), dim_, dim_);
  for (std::size_t i = 0; i < ring_->dim(); ++i) {
    Scalar a = element.at(i, 0);
    if (a.is_zero()) continue;
    out = out + actions_[i].scaled(a);
  }
  return out;
}

void FDModule::validate() const {
  const auto& R = *ring_;
  if (actions_.size() != R.dim()) throw ModuleInvariantError("one action per ring basis element");
  for (const auto& a : actions_) {
    if (a.rows() != dim_ || a.cols() != dim_) throw ModuleInvariantError("action shape mismatch");
    if (a.field() != R.field()) throw ModuleInvariantError("action over wrong field");
  }
  if (dim_ == 0) return;
  if (!actions_[R.unit_index()].is_identity())
    throw ModuleInvariantError("unit does not act as identity");
  for (std::size_t i = 0; i < R.dim(); ++i) {
    for (std::size_t j = 0; j < R.dim(); ++j) {
      Matrix lhs = actions_[i] * actions_[j];
      if (lhs != actions_[j] * actions_[i])
        throw ModuleInvariantError("actions do not commute");
      Matrix rhs(R.field(), dim_, dim_);
      for (std::size_t l = 0; l < R.dim(); ++l) {
        Scalar c = R.left_mult(i).at(l, j);
        if (!c.is_zero()) rhs = rhs + actions_[l].scaled(c);
      }
      if (lhs != rhs) throw ModuleInvariantError("actions do not respect structure constants");
    }
  }
}

ModuleHom::ModuleHom(ModulePtr source, ModulePtr target, Matrix matrix, bool check)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_->dim() || matrix_.cols() != source_->dim())
    throw ShapeError("hom matrix shape mismatch");
  if (check) validate();
}

void ModuleHom::validate() const {
  if (!same_ring(source_->ring(), target_->ring())) throw RingMismatch("hom between different rings");
  for (std::size_t i = 0; i < source_->ring()->dim(); ++i) {
    if (matrix_ * source_->action(i) != target_->action(i) * matrix_)
      throw ModuleInvariantError("matrix is not R-linear");
  }
}

bool ModuleHom::is_injective() const { return rank(matrix_) == source_->dim(); }
bool ModuleHom::is_surjective() const { return rank(matrix_) == target_->dim(); }

ModuleHom ModuleHom::inverse() const {
  if (source_->dim() != target_->dim()) throw ModuleInvariantError("inverse of non-square hom");
  auto inv = solve(matrix_, Matrix::identity(matrix_.field(), matrix_.rows()));
  if (!inv) throw ModuleInvariantError("hom is not invertible");
  return ModuleHom(target_, source_, *inv, false);
}

ModuleHom ModuleHom::compose(const ModuleHom& g, const ModuleHom& f) {
  if (g.source_->dim() != f.target_->dim() || !same_ring(g.source_->ring(), f.target_->ring()))
    throw ShapeError("composition mismatch");
  return ModuleHom(f.source_, g.target_, g.matrix_ * f.matrix_, false);
}

ModuleHom ModuleHom::identity(ModulePtr m) {
  Matrix id = Matrix::identity(m->ring()->field(), m->dim());
  return ModuleHom(m, m, std::move(id), false);
}

ModuleHom ModuleHom::zero(ModulePtr source, ModulePtr target) {
  Matrix z(source->ring()->field(), target->dim(), source->dim());
  return ModuleHom(std::move(source), std::move(target), std::move(z), false);
}

ModulePtr free_module(AlgebraPtr R, std::size_t n) {
  const std::size_t d = R->dim();
  const Field f = R->field();
  std::vector<Matrix> actions;
  actions.reserve(d);
  for (std::size_t t = 0; t < d; ++t) {
    Matrix a(f, n * d, n * d);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
          Scalar v = R->left_mult(t).at(r, c);
          if (!v.is_zero()) a.set(j * d + r, j * d + c, v);
        }
    actions.push_back(std::move(a));
  }
  return FDModule::create(std::move(R), n * d, std::move(actions), false);
}

ModulePtr residue_field_module(AlgebraPtr R) {
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < R->dim(); ++i) {
    Matrix a(R->field(), 1, 1);
    a.set(0, 0, R->residue_row().at(0, i));
    actions.push_back(std::move(a));
  }
  return FDModule::create(std::move(R), 1, std::move(actions), false);
}

ModulePtr zero_module(AlgebraPtr R) {
  std::vector<Matrix> actions(R->dim(), Matrix(R->field(), 0, 0));
  return FDModule::create(std::move(R), 0, std::move(actions), false);
}

Matrix free_generator_column(const AlgebraPtr& R, std::size_t n, std::size_t j) {
  Matrix out(R->field(), n * R->dim(), 1);
  out.set_int(j * R->dim() + R->unit_index(), 0, 1);
  return out;
}

HomModule hom_module(const ModulePtr& M, const ModulePtr& N) {
  check_ring(M, N);
  const auto R = M->ring();
  const Field f = R->field();
  const std::size_t m = M->dim(), n = N->dim(), mn = m * n;

  // commuting-ladder system on the flattened hom matrix (index (t, s) = t*m + s)
  HomModule out;
  out.arg_source = M;
  out.arg_target = N;
  Matrix basis = detail::dispatch(f, [&](auto ops) {
    using Ops = decltype(ops);
    std::vector<typename detail::SparseEchelon<Ops>::SVec> eqs;
    for (std::size_t ri = 0; ri < R->dim(); ++ri) {
      if (ri == R->unit_index()) continue;
      const auto& aN = Ops::data(N->action(ri));
      const auto& aM = Ops::data(M->action(ri));
      for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t s = 0; s < m; ++s) {
          typename detail::SparseEchelon<Ops>::SVec eq;
          for (std::size_t u = 0; u < n; ++u) {
            const auto& c = aN[t * n + u];
            if (!ops.is_zero(c)) eq.emplace_back(static_cast<std::uint32_t>(u * m + s), c);
          }
          for (std::size_t u = 0; u < m; ++u) {
            const auto& c = aM[u * m + s];
            if (!ops.is_zero(c))
              eq.emplace_back(static_cast<std::uint32_t>(t * m + u), ops.neg(c));
          }
          // merge duplicate indices (the diagonal term appears in both sums)
          std::sort(eq.begin(), eq.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
          typename detail::SparseEchelon<Ops>::SVec merged;
          for (const auto& [idx, val] : eq) {
            if (!merged.empty() && merged.back().first == idx) {
              merged.back().second = ops.add(merged.back().second, val);
              if (ops.is_zero(merged.back().second)) merged.pop_back();
            } else {
              merged.emplace_back(idx, val);
            }
          }
          if (!merged.empty()) eqs.push_back(std::move(merged));
        }
      }
    }
    return detail::sparse_kernel_basis(ops, mn, eqs, f);
  });

  const std::size_t h = basis.cols();
  for (std::size_t k = 0; k < h; ++k) {
    Matrix phi = unflatten_row_major(basis.column_at(k), n, m);
    out.basis.emplace_back(M, N, std::move(phi), false);
  }
  // R-action: (r . phi) = act_N(r) o phi
  std::vector<Matrix> actions;
  for (std::size_t ri = 0; ri < R->dim(); ++ri) {
    Matrix applied(f, mn, h);
    for (std::size_t k = 0; k < h; ++k) {
      Matrix img = flatten_row_major(N->action(ri) * out.basis[k].matrix());
      for (std::size_t i = 0; i < mn; ++i) applied.set(i, k, img.at(i, 0));
    }
    actions.push_back(h == 0 ? Matrix(f, 0, 0) : express_in_basis(basis, applied));
  }
  out.module = FDModule::create(R, h, std::move(actions), false);
  return out;
}

TensorModule tensor_module(const ModulePtr& M, const ModulePtr& N) {
  check_ring(M, N);
  const auto R = M->ring();
  const Field f = R->field();
  const std::size_t m = M->dim(), n = N->dim(), mn = m * n;
  const Matrix& mb = R->maximal_ideal_basis();

  TensorModule out;
  out.left = M;
  out.right = N;

  detail::dispatch(f, [&](auto ops) {
    using Ops = decltype(ops);
    detail::QuotientView<Ops> qv(ops, mn);
    for (std::size_t r = 0; r < mb.cols(); ++r) {
      Matrix actM = M->action_of(mb.column_at(r));
      Matrix actN = N->action_of(mb.column_at(r));
      const auto& am = Ops::data(actM);
      const auto& an = Ops::data(actN);
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          typename detail::SparseEchelon<Ops>::SVec rel;
          for (std::size_t u = 0; u < m; ++u) {
            const auto& c = am[u * m + a];
            if (!ops.is_zero(c)) rel.emplace_back(static_cast<std::uint32_t>(u * n + b), c);
          }
          for (std::size_t v = 0; v < n; ++v) {
            const auto& c = an[v * n + b];
            if (!ops.is_zero(c))
              rel.emplace_back(static_cast<std::uint32_t>(a * n + v), ops.neg(c));
          }
          std::sort(rel.begin(), rel.end(),
                    [](const auto& x, const auto& y) { return x.first < y.first; });
          typename detail::SparseEchelon<Ops>::SVec merged;
          for (const auto& [idx, val] : rel) {
            if (!merged.empty() && merged.back().first == idx) {
              merged.back().second = ops.add(merged.back().second, val);
              if (ops.is_zero(merged.back().second)) merged.pop_back();
            } else {
              merged.emplace_back(idx, val);
            }
          }
          if (!merged.empty()) qv.add_relation(merged);
        }
      }
    }
    qv.finalize();
    const std::size_t q = qv.dim();

    out.projection = Matrix(f, q, mn);
    for (std::uint32_t amb = 0; amb < mn; ++amb) {
      auto col = qv.project({{amb, ops.one()}});
      for (const auto& [idx, val] : col)
        out.projection.set(idx, amb, ops.to_scalar(val, f));
    }
    out.representatives = Matrix(f, mn, q);
    for (std::size_t k = 0; k < q; ++k) out.representatives.set_int(qv.lift_coord(k), k, 1);

    // induced action from the left factor, checked against the right factor
    std::vector<Matrix> actions;
    for (std::size_t ri = 0; ri < R->dim(); ++ri) {
      Matrix left_act(f, q, q), right_act(f, q, q);
      const auto& aM = Ops::data(M->action(ri));
      const auto& aN = Ops::data(N->action(ri));
      for (std::size_t k = 0; k < q; ++k) {
        std::uint32_t amb = qv.lift_coord(k);
        std::size_t a = amb / n, b = amb % n;
        typename detail::SparseEchelon<Ops>::SVec lv, rv;
        for (std::size_t u = 0; u < m; ++u) {
          const auto& c = aM[u * m + a];
          if (!ops.is_zero(c)) lv.emplace_back(static_cast<std::uint32_t>(u * n + b), c);
        }
        for (std::size_t v = 0; v < n; ++v) {
          const auto& c = aN[v * n + b];
          if (!ops.is_zero(c)) rv.emplace_back(static_cast<std::uint32_t>(a * n + v), c);
        }
        for (const auto& [idx, val] : qv.project(lv))
          left_act.set(idx, k, ops.to_scalar(val, f));
        for (const auto& [idx, val] : qv.project(rv))
          right_act.set(idx, k, ops.to_scalar(val, f));
      }
      if (left_act != right_act)
        throw ModuleInvariantError("tensor action not well-defined from either side");
      actions.push_back(std::move(left_act));
    }
    out.module = FDModule::create(R, q, std::move(actions), false);
  });
  return out;
}

ModuleHom tensor_of_homs(const TensorModule& src, const TensorModule& dst, const ModuleHom& f,
                         const ModuleHom& g) {
  if (f.source() != src.left || g.source() != src.right || f.target() != dst.left ||
      g.target() != dst.right)
    throw ShapeError("tensor_of_homs: factor mismatch");
  Matrix big = kron(f.matrix(), g.matrix());
  return ModuleHom(src.module, dst.module, dst.projection * big * src.representatives, false);
}

ModuleHom hom_post(const HomModule& src, const HomModule& dst, const ModuleHom& g) {
  const Field f = g.matrix().field();
  const std::size_t h = src.basis.size();
  Matrix basis_dst(f, dst.arg_source->dim() * dst.arg_target->dim(), dst.basis.size());
  for (std::size_t k = 0; k < dst.basis.size(); ++k) {
    Matrix fl = flatten_row_major(dst.basis[k].matrix());
    for (std::size_t i = 0; i < fl.rows(); ++i) basis_dst.set(i, k, fl.at(i, 0));
  }
  Matrix applied(f, basis_dst.rows(), h);
  for (std::size_t k = 0; k < h; ++k) {
    Matrix fl = flatten_row_major(g.matrix() * src.basis[k].matrix());
    for (std::size_t i = 0; i < fl.rows(); ++i) applied.set(i, k, fl.at(i, 0));
  }
  Matrix coords = h == 0 || dst.basis.empty() ? Matrix(f, dst.basis.size(), h)
                                              : express_in_basis(basis_dst, applied);
  return ModuleHom(src.module, dst.module, std::move(coords), false);
}

ModuleHom hom_pre(const HomModule& src, const HomModule& dst, const ModuleHom& f) {
  const Field fl = f.matrix().field();
  const std::size_t h = src.basis.size();
  Matrix basis_dst(fl, dst.arg_source->dim() * dst.arg_target->dim(), dst.basis.size());
  for (std::size_t k = 0; k < dst.basis.size(); ++k) {
    Matrix v = flatten_row_major(dst.basis[k].matrix());
    for (std::size_t i = 0; i < v.rows(); ++i) basis_dst.set(i, k, v.at(i, 0));
  }
  Matrix applied(fl, basis_dst.rows(), h);
  for (std::size_t k = 0; k < h; ++k) {
    Matrix v = flatten_row_major(src.basis[k].matrix() * f.matrix());
    for (std::size_t i = 0; i < v.rows(); ++i) applied.set(i, k, v.at(i, 0));
  }
  Matrix coords = h == 0 || dst.basis.empty() ? Matrix(fl, dst.basis.size(), h)
                                              : express_in_basis(basis_dst, applied);
  return ModuleHom(src.module, dst.module, std::move(coords), false);
}

ModulePtr matlis_dual(const ModulePtr& M) {
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < M->ring()->dim(); ++i) actions.push_back(M->action(i).transpose());
  return FDModule::create(M->ring(), M->dim(), std::move(actions), false);
}

Submodule kernel(const ModuleHom& f) {
  Matrix K = kernel_basis(f.matrix());
  auto mod = FDModule::create(f.source()->ring(), K.cols(),
                              induced_subspace_actions(*f.source(), K), false);
  return Submodule{mod, ModuleHom(mod, f.source(), std::move(K), false)};
}

Submodule image(const ModuleHom& f) {
  Matrix B = image_basis(f.matrix());
  auto mod = FDModule::create(f.target()->ring(), B.cols(),
                              induced_subspace_actions(*f.target(), B), false);
  return Submodule{mod, ModuleHom(mod, f.target(), std::move(B), false)};
}

QuotientModule cokernel(const ModuleHom& f) {
  QuotientBasis qb = quotient_basis(f.target()->dim(), f.matrix());
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < f.target()->ring()->dim(); ++i)
    actions.push_back(qb.projection * f.target()->action(i) * qb.representatives);
  auto mod = FDModule::create(f.target()->ring(), qb.projection.rows(), std::move(actions), false);
  return QuotientModule{mod, ModuleHom(f.target(), mod, qb.projection, false)};
}

Submodule submodule_spanned_by(const ModulePtr& M, const Matrix& columns) {
  Matrix closed(M->ring()->field(), M->dim(), 0);
  for (std::size_t i = 0; i < M->ring()->dim(); ++i)
    closed = Matrix::hstack(closed, M->action(i) * columns);
  Matrix B = image_basis(closed);
  auto mod = FDModule::create(M->ring(), B.cols(), induced_subspace_actions(*M, B), false);
  return Submodule{mod, ModuleHom(mod, M, std::move(B), false)};
}

QuotientModule quotient_by(const ModulePtr& M, const Matrix& columns) {
  Submodule sub = submodule_spanned_by(M, columns);
  QuotientBasis qb = quotient_basis(M->dim(), sub.inclusion.matrix());
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < M->ring()->dim(); ++i)
    actions.push_back(qb.projection * M->action(i) * qb.representatives);
  auto mod = FDModule::create(M->ring(), qb.projection.rows(), std::move(actions), false);
  return QuotientModule{mod, ModuleHom(M, mod, qb.projection, false)};
}

MinimalGenerators minimal_generators(const ModulePtr& M) {
  const Matrix& mb = M->ring()->maximal_ideal_basis();
  Matrix mM(M->ring()->field(), M->dim(), 0);
  for (std::size_t r = 0; r < mb.cols(); ++r)
    mM = Matrix::hstack(mM, M->action_of(mb.column_at(r)));
  QuotientBasis qb = quotient_basis(M->dim(), mM);
  return MinimalGenerators{qb.representatives.cols(), qb.representatives};
}

IsoResult is_isomorphic(const ModulePtr& M, const ModulePtr& N) {
  check_ring(M, N);
  if (M->dim() != N->dim()) {
    return {IsoKind::no, std::nullopt,
            "dimension mismatch: " + std::to_string(M->dim()) + " vs " +
                std::to_string(N->dim())};
  }
  if (M->dim() == 0) return {IsoKind::yes, ModuleHom::identity(M), "zero modules"};
  auto gM = minimal_generators(M), gN = minimal_generators(N);
  if (gM.count != gN.count) {
    return {IsoKind::no, std::nullopt,
            "minimal generator count mismatch: " + std::to_string(gM.count) + " vs " +
                std::to_string(gN.count)};
  }
  HomModule H = hom_module(M, N);
  const std::size_t h = H.basis.size();
  if (h == 0) return {IsoKind::no, std::nullopt, "Hom(M, N) = 0"};

  const Field f = M->ring()->field();
  auto try_combo = [&](const std::vector<Scalar>& xs) -> std::optional<ModuleHom> {
    Matrix cand(f, N->dim(), M->dim());
    for (std::size_t j = 0; j < h; ++j) {
      if (xs[j].is_zero()) continue;
      cand = cand + H.basis[j].matrix().scaled(xs[j]);
    }
    if (rank(cand) == M->dim()) return ModuleHom(M, N, std::move(cand), false);
    return std::nullopt;
  };

  std::mt19937_64 rng(iso_search_seed(M->dim(), N->dim(), h));
  if (f.is_prime_field()) {
    const std::uint64_t p = f.characteristic();
    double total = h * std::log2(double(p));
    if (total <= 20.0) {
      std::vector<std::uint32_t> odo(h, 0);
      while (true) {
        std::size_t k = 0;
        while (k < h && odo[k] + 1 == p) odo[k++] = 0;
        if (k == h) break;
        ++odo[k];
        std::vector<Scalar> xs;
        for (std::size_t j = 0; j < h; ++j) xs.push_back(Scalar::from_residue(f, odo[j]));
        if (auto w = try_combo(xs)) return {IsoKind::yes, std::move(w), "exhaustive search"};
      }
    } else {
      std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
      for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Scalar> xs;
        for (std::size_t j = 0; j < h; ++j)
          xs.push_back(Scalar::from_residue(f, static_cast<std::uint32_t>(dist(rng))));
        if (auto w = try_combo(xs)) return {IsoKind::yes, std::move(w), "randomized search"};
      }
    }
  } else {
    std::uniform_int_distribution<long> dist(-3, 3);
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::vector<Scalar> xs;
      for (std::size_t j = 0; j < h; ++j) xs.push_back(Scalar(f, dist(rng)));
      if (auto w = try_combo(xs)) return {IsoKind::yes, std::move(w), "randomized search"};
    }
  }
  return {IsoKind::no_uncertified, std::nullopt,
          "invariants agree but no invertible hom found by the search policy"};
}

ModuleHom evaluation_map_with(const TensorModule& T, const HomModule& H, const ModulePtr& M) {
  const ModulePtr& C = H.arg_source;
  const Field f = C->ring()->field();
  Matrix mat(f, M->dim(), T.module->dim());
  const std::size_t hd = H.module->dim();
  for (std::size_t g = 0; g < T.module->dim(); ++g) {
    // representative of basis vector g in C (x)_k Hom
    for (std::size_t c = 0; c < C->dim(); ++c) {
      for (std::size_t j = 0; j < hd; ++j) {
        Scalar coeff = T.representatives.at(c * hd + j, g);
        if (coeff.is_zero()) continue;
        for (std::size_t t = 0; t < M->dim(); ++t) {
          Scalar v = mat.at(t, g) + coeff * H.basis[j].matrix().at(t, c);
          mat.set(t, g, v);
        }
      }
    }
  }
  return ModuleHom(T.module, M, std::move(mat));
}

ModuleHom evaluation_map(const ModulePtr& C, const ModulePtr& M) {
  check_ring(C, M);
  HomModule H = hom_module(C, M);
  TensorModule T = tensor_module(C, H.module);
  return evaluation_map_with(T, H, M);
}

ModuleHom biduality_map(const ModulePtr& C, const ModulePtr& M) {
  check_ring(C, M);
  TensorModule T = tensor_module(C, M);
  HomModule H = hom_module(C, T.module);
  const Field f = C->ring()->field();
  const std::size_t m = M->dim(), c_dim = C->dim(), t_dim = T.module->dim();

  Matrix basis(f, c_dim * t_dim, H.basis.size());
  for (std::size_t k = 0; k < H.basis.size(); ++k) {
    Matrix fl = flatten_row_major(H.basis[k].matrix());
    for (std::size_t i = 0; i < fl.rows(); ++i) basis.set(i, k, fl.at(i, 0));
  }
  Matrix images(f, c_dim * t_dim, m);
  for (std::size_t em = 0; em < m; ++em) {
    // the hom c |-> [c (x) e_m], flattened (t, c) -> t*c_dim + c
    for (std::size_t c = 0; c < c_dim; ++c)
      for (std::size_t t = 0; t < t_dim; ++t)
        images.set(t * c_dim + c, em, T.projection.at(t, c * m + em));
  }
  Matrix coords = express_in_basis(basis, images);
  return ModuleHom(M, H.module, std::move(coords));
}

ModuleHom homothety_map(const ModulePtr& C) {
  const auto R = C->ring();
  HomModule H = hom_module(C, C);
  const Field f = R->field();
  Matrix basis(f, C->dim() * C->dim(), H.basis.size());
  for (std::size_t k = 0; k < H.basis.size(); ++k) {
    Matrix fl = flatten_row_major(H.basis[k].matrix());
    for (std::size_t i = 0; i < fl.rows(); ++i) basis.set(i, k, fl.at(i, 0));
  }
  Matrix images(f, C->dim() * C->dim(), R->dim());
  for (std::size_t i = 0; i < R->dim(); ++i) {
    Matrix fl = flatten_row_major(C->action(i));
    for (std::size_t r = 0; r < fl.rows(); ++r) images.set(r, i, fl.at(r, 0));
  }
  Matrix coords = express_in_basis(basis, images);
  // source: R as a module over itself
  return ModuleHom(free_module(R, 1), H.module, std::move(coords));
}

DirectSum direct_sum(const ModulePtr& M, const ModulePtr& N) {
  check_ring(M, N);
  const Field f = M->ring()->field();
  const std::size_t m = M->dim(), n = N->dim();
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < M->ring()->dim(); ++i) {
    Matrix a(f, m + n, m + n);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        Scalar v = M->action(i).at(r, c);
        if (!v.is_zero()) a.set(r, c, v);
      }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        Scalar v = N->action(i).at(r, c);
        if (!v.is_zero()) a.set(m + r, m + c, v);
      }
    actions.push_back(std::move(a));
  }
  auto sum = FDModule::create(M->ring(), m + n, std::move(actions), false);
  Matrix il(f, m + n, m), ir(f, m + n, n), pl(f, m, m + n), pr(f, n, m + n);
  for (std::size_t i = 0; i < m; ++i) {
    il.set_int(i, i, 1);
    pl.set_int(i, i, 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    ir.set_int(m + i, i, 1);
    pr.set_int(i, m + i, 1);
  }
  return DirectSum{sum, ModuleHom(M, sum, std::move(il), false),
                   ModuleHom(N, sum, std::move(ir), false),
                   ModuleHom(sum, M, std::move(pl), false),
                   ModuleHom(sum, N, std::move(pr), false)};
}

Matrix annihilator(const ModulePtr& M) {
  const auto R = M->ring();
  const Field f = R->field();
  const std::size_t m = M->dim();
  Matrix sys(f, m * m, R->dim());
  for (std::size_t i = 0; i < R->dim(); ++i) {
    Matrix fl = flatten_row_major(M->action(i));
    for (std::size_t r = 0; r < fl.rows(); ++r) sys.set(r, i, fl.at(r, 0));
  }
  return kernel_basis(sys);
}

bool ideal_contained_in(const AlgebraPtr&, const Matrix& element_columns,
                        const Matrix& ideal_basis) {
  if (element_columns.cols() == 0) return true;
  if (ideal_basis.cols() == 0) return element_columns.is_zero();
  return solve(ideal_basis, element_columns).has_value();
}

}  // namespace relhom
