#include "relhom/relative.hpp"

#include <algorithm>
#include <variant>

#include "echelon.hpp"
#include "ops.hpp"
#include "util.hpp"

namespace relhom {

using detail::homology_subquotient;
using detail::power_module;

const char* flavor_name(RelTorFlavor f) {
  switch (f) {
    case RelTorFlavor::pc_m: return "pc-m";
    case RelTorFlavor::fc_m: return "fc-m";
    case RelTorFlavor::m_pc: return "m-pc";
    case RelTorFlavor::m_fc: return "m-fc";
  }
  return "?";
}

bool flavor_resolves_first_slot(RelTorFlavor f) {
  return f == RelTorFlavor::pc_m || f == RelTorFlavor::fc_m;
}

HomologicalDim HomologicalDim::minus_infinity(std::size_t bound) {
  return {Kind::minus_infinity, 0, bound};
}
HomologicalDim HomologicalDim::finite(std::size_t v, std::size_t bound) {
  return {Kind::finite, v, bound};
}
HomologicalDim HomologicalDim::above_bound(std::size_t bound) {
  return {Kind::above_bound, 0, bound};
}

bool operator<(const HomologicalDim& a, const HomologicalDim& b) {
  auto key = [](const HomologicalDim& x) -> long {
    switch (x.kind) {
      case HomologicalDim::Kind::minus_infinity: return -1;
      case HomologicalDim::Kind::finite: return static_cast<long>(x.value);
      case HomologicalDim::Kind::above_bound: return static_cast<long>(x.bound) + 1000000;
    }
    return 0;
  };
  return key(a) < key(b);
}

bool operator==(const HomologicalDim& a, const HomologicalDim& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == HomologicalDim::Kind::finite) return a.value == b.value;
  return true;
}

bool HomologicalDim::le_int(std::size_t n) const {
  if (kind == Kind::above_bound) return false;
  if (kind == Kind::minus_infinity) return true;
  return value <= n;
}

HomologicalDim HomologicalDim::decremented() const {
  if (kind != Kind::finite) return *this;
  if (value == 0) return minus_infinity(bound);
  return finite(value - 1, bound);
}

std::string HomologicalDim::str() const {
  switch (kind) {
    case Kind::minus_infinity: return "-inf";
    case Kind::finite: return std::to_string(value);
    case Kind::above_bound: return "above-bound(" + std::to_string(bound) + ")";
  }
  return "?";
}

bool BalanceTable::any_flagged() const {
  for (bool b : flagged)
    if (b) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Direct-strategy pipeline. Terms Q_j = C (x) R^{b_j} of the proper resolution
// and the tensor stages Q_j (x) N live at the k-level: quotient views of
// sparse relation systems plus sparse action/differential columns. No module
// actions are materialized for the large intermediate spaces; homology
// dimensions come from quotient-rank bookkeeping.

namespace {

template <class Ops>
using SVecT = typename detail::SparseEchelon<Ops>::SVec;

template <class Ops>
SVecT<Ops> merge_sorted(Ops ops, SVecT<Ops> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SVecT<Ops> out;
  for (const auto& [idx, val] : v) {
    if (!out.empty() && out.back().first == idx) {
      out.back().second = ops.add(out.back().second, val);
      if (ops.is_zero(out.back().second)) out.pop_back();
    } else if (!ops.is_zero(val)) {
      out.emplace_back(idx, val);
    }
  }
  return out;
}

template <class Ops>
struct DirectTerm {
  std::size_t dim = 0;
  // sparse action columns on the quotient basis, one set per ring basis element
  std::vector<std::vector<SVecT<Ops>>> action_cols;
  // induced differential columns into the previous term (empty for degree 0)
  std::vector<SVecT<Ops>> diff_cols;
};

// Proper-resolution terms for one resolved module, built degree by degree.
template <class Ops>
struct DirectPipeline {
  Ops ops;
  std::vector<DirectTerm<Ops>> terms;
  std::vector<detail::QuotientView<Ops>> views;  // kept for projections

  DirectPipeline(Ops o) : ops(o) {}

  void build(const FreeResolution& res, const FDModule& C, std::size_t up_to) {
    const AlgebraPtr& R = C.ring();
    const std::size_t d = R->dim();
    const std::size_t cd = C.dim();
    const Matrix& mb = R->maximal_ideal_basis();

    for (std::size_t j = terms.size(); j <= up_to; ++j) {
      const std::size_t b = res.betti[j];
      const std::size_t free_dim = d * b;
      const std::size_t ambient = cd * free_dim;
      DirectTerm<Ops> term;
      detail::QuotientView<Ops> qv(ops, ambient);

      for (std::size_t r = 0; r < mb.cols(); ++r) {
        Matrix actC = C.action_of(mb.column_at(r));
        Matrix L = R->multiplication_matrix(mb.column_at(r));
        const auto& ac = Ops::data(actC);
        const auto& lm = Ops::data(L);
        for (std::size_t c = 0; c < cd; ++c) {
          for (std::size_t g = 0; g < b; ++g) {
            for (std::size_t i = 0; i < d; ++i) {
              // (r.e_c) (x) e_{(g,i)}  -  e_c (x) (r.e_{(g,i)})
              SVecT<Ops> rel;
              for (std::size_t u = 0; u < cd; ++u) {
                const auto& v = ac[u * cd + c];
                if (!ops.is_zero(v))
                  rel.emplace_back(static_cast<std::uint32_t>(u * free_dim + g * d + i), v);
              }
              for (std::size_t l = 0; l < d; ++l) {
                const auto& v = lm[l * d + i];
                if (!ops.is_zero(v))
                  rel.emplace_back(static_cast<std::uint32_t>(c * free_dim + g * d + l),
                                   ops.neg(v));
              }
              rel = merge_sorted(ops, std::move(rel));
              if (!rel.empty()) qv.add_relation(rel);
            }
          }
        }
      }
      qv.finalize();
      term.dim = qv.dim();
      if (term.dim != cd * b)
        throw ModuleInvariantError("tensor with a free module has unexpected dimension");

      // action columns for every ring basis element (left-factor action)
      term.action_cols.resize(d);
      for (std::size_t t = 0; t < d; ++t) {
        const auto& at = Ops::data(C.action(t));
        term.action_cols[t].resize(term.dim);
        for (std::size_t k = 0; k < term.dim; ++k) {
          std::uint32_t amb = qv.lift_coord(k);
          std::size_t c = amb / free_dim, x = amb % free_dim;
          SVecT<Ops> img;
          for (std::size_t u = 0; u < cd; ++u) {
            const auto& v = at[u * cd + c];
            if (!ops.is_zero(v))
              img.emplace_back(static_cast<std::uint32_t>(u * free_dim + x), v);
          }
          term.action_cols[t][k] = qv.project(img);
        }
      }

      // induced differential id_C (x) d_j into the previous term
      if (j >= 1 && term.dim > 0) {
        const Matrix kmat = res.free_map(j);  // (d b_{j-1}) x (d b_j)
        const auto& km = Ops::data(kmat);
        const std::size_t prev_free = kmat.rows();
        term.diff_cols.resize(term.dim);
        for (std::size_t k = 0; k < term.dim; ++k) {
          std::uint32_t amb = qv.lift_coord(k);
          std::size_t c = amb / free_dim, x = amb % free_dim;
          SVecT<Ops> img;
          for (std::size_t y = 0; y < prev_free; ++y) {
            const auto& v = km[y * kmat.cols() + x];
            if (!ops.is_zero(v))
              img.emplace_back(static_cast<std::uint32_t>(c * prev_free + y), v);
          }
          term.diff_cols[k] = views[j - 1].project(img);
        }
      }
      views.push_back(std::move(qv));
      terms.push_back(std::move(term));
    }
  }
};

// One tensored term (Q_j (x) N) or (N (x) Q_j) as a quotient view over
// quotient-basis-of-Q_j times basis-of-N coordinates.
template <class Ops>
struct TensorStage {
  detail::QuotientView<Ops> qv;
  std::size_t n = 0;       // dim N
  std::size_t q = 0;       // dim Q_j
  bool term_on_left = true;

  std::uint32_t idx(std::size_t g, std::size_t f) const {
    return static_cast<std::uint32_t>(term_on_left ? g * n + f : f * q + g);
  }
};

template <class Ops>
TensorStage<Ops> build_stage(Ops ops, const DirectTerm<Ops>& term, const FDModule& N,
                             bool term_on_left) {
  const AlgebraPtr& R = N.ring();
  const Matrix& mb = R->maximal_ideal_basis();
  const std::size_t n = N.dim(), q = term.dim;
  TensorStage<Ops> st{detail::QuotientView<Ops>(ops, q * n), n, q, term_on_left};

  for (std::size_t r = 0; r < mb.cols(); ++r) {
    // action of the maximal-ideal element on Q_j, combined from basis actions
    Matrix col = mb.column_at(r);
    Matrix actN = N.action_of(col);
    const auto& an = Ops::data(actN);
    std::vector<SVecT<Ops>> actQ(q);
    for (std::size_t i = 0; i < R->dim(); ++i) {
      Scalar coeff = col.at(i, 0);
      if (coeff.is_zero()) continue;
      auto cv = ops.from_scalar(coeff);
      for (std::size_t k = 0; k < q; ++k) {
        for (const auto& [idx, val] : term.action_cols[i][k])
          actQ[k].emplace_back(idx, ops.mul(cv, val));
      }
    }
    for (auto& v : actQ) v = merge_sorted(ops, std::move(v));

    for (std::size_t g = 0; g < q; ++g) {
      for (std::size_t f = 0; f < n; ++f) {
        SVecT<Ops> rel;
        for (const auto& [g2, val] : actQ[g]) rel.emplace_back(st.idx(g2, f), val);
        for (std::size_t v = 0; v < n; ++v) {
          const auto& c = an[v * n + f];
          if (!ops.is_zero(c)) rel.emplace_back(st.idx(g, v), ops.neg(c));
        }
        rel = merge_sorted(ops, std::move(rel));
        if (!rel.empty()) st.qv.add_relation(rel);
      }
    }
  }
  st.qv.finalize();
  return st;
}

// Ambient columns (in the target stage) of the differential applied to every
// free coordinate of the source stage.
template <class Ops>
std::vector<SVecT<Ops>> stage_differential_columns(Ops ops, const DirectTerm<Ops>& term,
                                                   TensorStage<Ops>& src,
                                                   const TensorStage<Ops>& dst) {
  std::vector<SVecT<Ops>> cols;
  cols.reserve(src.qv.dim());
  for (std::size_t k = 0; k < src.qv.dim(); ++k) {
    std::uint32_t amb = src.qv.lift_coord(k);
    std::size_t g, f;
    if (src.term_on_left) {
      g = amb / src.n;
      f = amb % src.n;
    } else {
      f = amb / src.q;
      g = amb % src.q;
    }
    SVecT<Ops> img;
    for (const auto& [g2, val] : term.diff_cols[g]) img.emplace_back(dst.idx(g2, f), val);
    cols.push_back(merge_sorted(ops, std::move(img)));
  }
  return cols;
}

}  // namespace

struct RelativeEngine::DirectData {
  using PipeVariant = std::variant<DirectPipeline<detail::FpOps>, DirectPipeline<detail::RatOps>>;

  std::shared_ptr<const FreeResolution> res;
  PipeVariant pipe;

  static PipeVariant make_pipe(const Field& f) {
    if (f.is_prime_field())
      return PipeVariant{std::in_place_type<DirectPipeline<detail::FpOps>>,
                         detail::FpOps(f.characteristic())};
    return PipeVariant{std::in_place_type<DirectPipeline<detail::RatOps>>, detail::RatOps{}};
  }
  explicit DirectData(const Field& f) : pipe(make_pipe(f)) {}
};

RelativeEngine::RelativeEngine(ResolutionCache& cache, ModulePtr C, std::size_t bound)
    : cache_(cache), C_(std::move(C)), bound_(bound) {
  auto check = is_semidualizing(cache_, C_, bound);
  if (!check.ok)
    throw std::invalid_argument("module is not semidualizing: " + check.refusal);
}

const HomModule& RelativeEngine::hom_from_C(const ModulePtr& M) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = hom_cache_.find(M.get());
  if (it != hom_cache_.end()) return it->second;
  pins_[M.get()] = M;
  return hom_cache_.emplace(M.get(), hom_module(C_, M)).first->second;
}

const TensorModule& RelativeEngine::tensor_with_C(const ModulePtr& M) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = tensor_cache_.find(M.get());
  if (it != tensor_cache_.end()) return it->second;
  pins_[M.get()] = M;
  return tensor_cache_.emplace(M.get(), tensor_module(C_, M)).first->second;
}

void RelativeEngine::clear_scratch() {
  std::lock_guard<std::mutex> lock(mu_);
  direct_cache_.clear();
}

std::shared_ptr<RelativeEngine::DirectData> RelativeEngine::direct_data(const ModulePtr& M,
                                                                        std::size_t max_degree) {
  ModulePtr HM = hom_from_C(M).module;
  std::lock_guard<std::mutex> lock(mu_);
  auto it = direct_cache_.find(M.get());
  std::shared_ptr<DirectData> dd;
  if (it != direct_cache_.end()) {
    dd = it->second;
  } else {
    dd = std::make_shared<DirectData>(C_->ring()->field());
    direct_cache_[M.get()] = dd;
    pins_[M.get()] = M;
  }
  dd->res = cache_.get(HM, max_degree);
  std::visit([&](auto& pipe) { pipe.build(*dd->res, *C_, max_degree); }, dd->pipe);
  return dd;
}

std::vector<std::size_t> RelativeEngine::direct_dims(const ModulePtr& resolved,
                                                     const ModulePtr& other, bool term_on_left,
                                                     std::size_t max_i) {
  auto dd = direct_data(resolved, max_i + 1);
  std::vector<std::size_t> dims(max_i + 1);
  std::visit(
      [&](auto& pipe) {
        using Ops = std::remove_reference_t<decltype(pipe.ops)>;
        Ops ops = pipe.ops;
        std::vector<TensorStage<Ops>> stages;
        stages.reserve(max_i + 2);
        for (std::size_t j = 0; j <= max_i + 1; ++j)
          stages.push_back(build_stage(ops, pipe.terms[j], *other, term_on_left));
        std::vector<std::size_t> ranks(max_i + 2, 0);
        for (std::size_t j = 1; j <= max_i + 1; ++j) {
          auto cols = stage_differential_columns(ops, pipe.terms[j], stages[j], stages[j - 1]);
          ranks[j] = stages[j - 1].qv.rank_of_image(cols);
        }
        for (std::size_t i = 0; i <= max_i; ++i)
          dims[i] = stages[i].qv.dim() - ranks[i] - ranks[i + 1];
      },
      dd->pipe);
  return dims;
}

ModulePtr RelativeEngine::direct_module(const ModulePtr& resolved, const ModulePtr& other,
                                        bool term_on_left, std::size_t degree) {
  auto dd = direct_data(resolved, degree + 1);
  ModulePtr out;
  std::visit(
      [&](auto& pipe) {
        using Ops = std::remove_reference_t<decltype(pipe.ops)>;
        Ops ops = pipe.ops;
        const Field f = C_->ring()->field();
        const std::size_t d = C_->ring()->dim();

        TensorStage<Ops> below =
            degree >= 1 ? build_stage(ops, pipe.terms[degree - 1], *other, term_on_left)
                        : TensorStage<Ops>{detail::QuotientView<Ops>(ops, 0), 0, 0, true};
        TensorStage<Ops> here = build_stage(ops, pipe.terms[degree], *other, term_on_left);
        TensorStage<Ops> above = build_stage(ops, pipe.terms[degree + 1], *other, term_on_left);

        // dense induced differentials on the quotient bases
        Matrix d_out_m(f, degree >= 1 ? below.qv.dim() : 0, here.qv.dim());
        if (degree >= 1) {
          auto cols = stage_differential_columns(ops, pipe.terms[degree], here, below);
          for (std::size_t k = 0; k < cols.size(); ++k)
            for (const auto& [idx, val] : below.qv.project(cols[k]))
              d_out_m.set(idx, k, ops.to_scalar(val, f));
        }
        Matrix d_in_m(f, here.qv.dim(), above.qv.dim());
        {
          auto cols = stage_differential_columns(ops, pipe.terms[degree + 1], above, here);
          for (std::size_t k = 0; k < cols.size(); ++k)
            for (const auto& [idx, val] : here.qv.project(cols[k]))
              d_in_m.set(idx, k, ops.to_scalar(val, f));
        }

        // ambient FDModule of the middle stage, actions through the Q factor
        std::vector<Matrix> actions;
        for (std::size_t t = 0; t < d; ++t) {
          Matrix a(f, here.qv.dim(), here.qv.dim());
          for (std::size_t k = 0; k < here.qv.dim(); ++k) {
            std::uint32_t amb = here.qv.lift_coord(k);
            std::size_t g, fidx;
            if (here.term_on_left) {
              g = amb / here.n;
              fidx = amb % here.n;
            } else {
              fidx = amb / here.q;
              g = amb % here.q;
            }
            SVecT<Ops> img;
            for (const auto& [g2, val] : pipe.terms[degree].action_cols[t][g])
              img.emplace_back(here.idx(g2, fidx), val);
            for (const auto& [idx, val] : here.qv.project(merge_sorted(ops, std::move(img))))
              a.set(idx, k, ops.to_scalar(val, f));
          }
          actions.push_back(std::move(a));
        }
        ModulePtr ambient =
            FDModule::create(C_->ring(), here.qv.dim(), std::move(actions), false);
        out = homology_subquotient(ambient, degree >= 1 ? &d_out_m : nullptr, &d_in_m).module;
      },
      dd->pipe);
  return out;
}

std::vector<std::size_t> RelativeEngine::formula_dims(const ModulePtr& resolved,
                                                      const ModulePtr& other, std::size_t max_i) {
  return tor_dims(cache_, hom_from_C(resolved).module, tensor_with_C(other).module, max_i);
}

std::vector<std::size_t> RelativeEngine::rel_tor_dims(RelTorFlavor flavor, const ModulePtr& M,
                                                      const ModulePtr& N, std::size_t max_i,
                                                      RelTorStrategy strategy) {
  const bool first = flavor_resolves_first_slot(flavor);
  const ModulePtr& resolved = first ? M : N;
  const ModulePtr& other = first ? N : M;

  auto memoized = [&](int kind, auto&& compute) -> std::vector<std::size_t> {
    DimsKey key{kind, resolved.get(), other.get(), first};
    {
      // pin both modules so pointer keys can never be reused by later values
      std::lock_guard<std::mutex> lock(mu_);
      pins_[resolved.get()] = resolved;
      pins_[other.get()] = other;
      auto it = dims_memo_.find(key);
      if (it != dims_memo_.end() && it->second.size() > max_i) {
        return {it->second.begin(), it->second.begin() + static_cast<long>(max_i) + 1};
      }
    }
    std::vector<std::size_t> dims = compute();
    std::lock_guard<std::mutex> lock(mu_);
    auto& slot = dims_memo_[key];
    if (slot.size() < dims.size()) slot = dims;
    return dims;
  };

  switch (strategy) {
    case RelTorStrategy::direct:
      return memoized(0, [&] { return direct_dims(resolved, other, first, max_i); });
    case RelTorStrategy::formula:
      return memoized(1, [&] { return formula_dims(resolved, other, max_i); });
    case RelTorStrategy::cross_check: {
      auto a = memoized(0, [&] { return direct_dims(resolved, other, first, max_i); });
      auto b = memoized(1, [&] { return formula_dims(resolved, other, max_i); });
      if (a != b) {
        std::string msg = "relative Tor strategies disagree for flavor ";
        msg += flavor_name(flavor);
        for (std::size_t i = 0; i <= max_i; ++i)
          if (a[i] != b[i])
            msg += " [degree " + std::to_string(i) + ": direct " + std::to_string(a[i]) +
                   " vs formula " + std::to_string(b[i]) + "]";
        throw CrossCheckMismatch(msg);
      }
      return a;
    }
  }
  throw std::logic_error("unreachable");
}

ModulePtr RelativeEngine::rel_tor(const RelTorQuery& q, RelTorStrategy strategy) {
  bool same_C = q.C.get() == C_.get();
  if (!same_C && same_ring(q.C->ring(), C_->ring()) && q.C->dim() == C_->dim()) {
    same_C = true;
    for (std::size_t i = 0; i < C_->ring()->dim() && same_C; ++i)
      same_C = q.C->action(i) == C_->action(i);
  }
  if (!same_C)
    throw std::invalid_argument("query names a different semidualizing module");
  const bool first = flavor_resolves_first_slot(q.flavor);
  const ModulePtr& resolved = first ? q.M : q.N;
  const ModulePtr& other = first ? q.N : q.M;
  switch (strategy) {
    case RelTorStrategy::direct:
      return direct_module(resolved, other, first, q.degree);
    case RelTorStrategy::formula:
      return tor(cache_, hom_from_C(resolved).module, tensor_with_C(other).module, q.degree);
    case RelTorStrategy::cross_check: {
      rel_tor_dims(q.flavor, q.M, q.N, q.degree, RelTorStrategy::cross_check);
      return tor(cache_, hom_from_C(resolved).module, tensor_with_C(other).module, q.degree);
    }
  }
  throw std::logic_error("unreachable");
}

ProperResolution RelativeEngine::proper_pc_resolution(const ModulePtr& M, std::size_t n) {
  const AlgebraPtr R = C_->ring();
  const HomModule& H = hom_from_C(M);
  auto res = cache_.get(H.module, n);

  std::vector<ModulePtr> terms;
  std::vector<TensorModule> idents;
  std::vector<ModulePtr> frees;
  for (std::size_t j = 0; j <= n; ++j) {
    frees.push_back(free_module(R, res->betti[j]));
    idents.push_back(tensor_module(C_, frees[j]));
    terms.push_back(idents[j].module);
  }
  std::vector<ModuleHom> diffs;
  for (std::size_t j = 1; j <= n; ++j) {
    ModuleHom free_map(frees[j], frees[j - 1], res->free_map(j), false);
    diffs.push_back(tensor_of_homs(idents[j], idents[j - 1], ModuleHom::identity(C_), free_map));
  }
  ChainComplex complex(0, terms, std::move(diffs));

  // augmentation: evaluation after C (x) tau
  TensorModule T_CH = tensor_module(C_, H.module);
  ModuleHom Ctau = tensor_of_homs(idents[0], T_CH, ModuleHom::identity(C_),
                                  ModuleHom(frees[0], H.module, res->augmentation.matrix(), false));
  ModuleHom xi = evaluation_map_with(T_CH, H, M);
  ModuleHom aug = ModuleHom::compose(xi, Ctau);

  return ProperResolution{M,
                          C_,
                          std::move(complex),
                          std::move(aug),
                          std::move(idents),
                          res->betti,
                          "C (x) minimal free resolution of Hom(C, target), augmented through "
                          "the evaluation map"};
}

PropernessReport RelativeEngine::is_proper(const ChainComplex& augmented) const {
  // Hom(C, -) applied to the augmented complex, then exactness. Lemma-level
  // justification: Hom(P_C, -)-exactness reduces to Hom(C, -)-exactness.
  std::vector<HomModule> homs;
  for (int j = augmented.lo(); j <= augmented.hi(); ++j)
    homs.push_back(hom_module(C_, augmented.module_at(j)));
  std::vector<ModulePtr> mods;
  std::vector<ModuleHom> maps;
  // pad with a zero module so the augmentation target spot is interior
  mods.push_back(zero_module(C_->ring()));
  for (auto& h : homs) mods.push_back(h.module);
  for (std::size_t k = 0; k < homs.size(); ++k) {
    if (k == 0) {
      maps.push_back(ModuleHom::zero(homs[0].module, mods[0]));
    } else {
      maps.push_back(hom_post(homs[k], homs[k - 1],
                              augmented.differential_at(augmented.lo() + static_cast<int>(k))));
    }
  }
  ChainComplex homd(augmented.lo() - 1, std::move(mods), std::move(maps));
  auto rep = homd.is_exact();
  if (rep.exact) return {};
  return {false, rep.first_failure, rep.homology_dim};
}

std::vector<std::size_t> RelativeEngine::rel_ext_pc_dims(const ModulePtr& M, const ModulePtr& N,
                                                         std::size_t max_i,
                                                         RelTorStrategy strategy) {
  auto transformed = [&] {
    return ext_dims(cache_, hom_from_C(M).module, hom_from_C(N).module, max_i);
  };
  auto direct = [&] {
    ProperResolution pr = proper_pc_resolution(M, max_i + 1);
    std::vector<HomModule> homs;
    for (std::size_t j = 0; j <= max_i + 1; ++j)
      homs.push_back(hom_module(pr.complex.module_at(static_cast<int>(j)), N));
    std::vector<std::size_t> ranks(max_i + 2, 0);  // ranks[j] = rank delta^j
    for (std::size_t j = 1; j <= max_i + 1; ++j) {
      ModuleHom delta =
          hom_pre(homs[j - 1], homs[j], pr.complex.differential_at(static_cast<int>(j)));
      ranks[j] = rank(delta.matrix());
    }
    std::vector<std::size_t> dims(max_i + 1);
    for (std::size_t i = 0; i <= max_i; ++i)
      dims[i] = homs[i].module->dim() - ranks[i] - ranks[i + 1];
    return dims;
  };
  switch (strategy) {
    case RelTorStrategy::formula:
      return transformed();
    case RelTorStrategy::direct:
      return direct();
    case RelTorStrategy::cross_check: {
      auto a = direct();
      auto b = transformed();
      if (a != b)
        throw CrossCheckMismatch("relative Ext strategies disagree (P_C flavor)");
      return a;
    }
  }
  throw std::logic_error("unreachable");
}

ModulePtr RelativeEngine::rel_ext_pc(const ModulePtr& M, const ModulePtr& N, std::size_t i,
                                     RelTorStrategy strategy) {
  if (strategy == RelTorStrategy::cross_check) rel_ext_pc_dims(M, N, i, strategy);
  if (strategy == RelTorStrategy::formula)
    return ext(cache_, hom_from_C(M).module, hom_from_C(N).module, i);
  ProperResolution pr = proper_pc_resolution(M, i + 1);
  std::vector<HomModule> homs;
  for (std::size_t j = (i >= 1 ? i - 1 : 0); j <= i + 1; ++j)
    homs.push_back(hom_module(pr.complex.module_at(static_cast<int>(j)), N));
  const std::size_t base = i >= 1 ? i - 1 : 0;
  Matrix d_out =
      hom_pre(homs[i - base], homs[i + 1 - base], pr.complex.differential_at(static_cast<int>(i + 1)))
          .matrix();
  const Matrix* in_ptr = nullptr;
  Matrix d_in;
  if (i >= 1) {
    d_in = hom_pre(homs[0], homs[1], pr.complex.differential_at(static_cast<int>(i))).matrix();
    in_ptr = &d_in;
  }
  return homology_subquotient(homs[i - base].module, &d_out, in_ptr).module;
}

ModulePtr RelativeEngine::rel_ext_mic(const ModulePtr& M, const ModulePtr& N, std::size_t i) {
  // Matlis-dual transport: Ext_MIC^i(M, N) is the dual of Tor^{M-PC}_i(M, dual N),
  // cross-checked in dimension against Ext^i(C (x) M, C (x) N).
  ModulePtr via_transport = matlis_dual(
      rel_tor({RelTorFlavor::m_pc, C_, M, matlis_dual(N), i}, RelTorStrategy::formula));
  auto check = ext_dims(cache_, tensor_with_C(M).module, tensor_with_C(N).module, i);
  if (check[i] != via_transport->dim())
    throw CrossCheckMismatch("relative Ext strategies disagree (M-I_C flavor)");
  return via_transport;
}

namespace {

// Shared tail logic for the two projective-dimension detectors: the flat or
// projective dimension of Hom(C, M) read off Tor/Ext vanishing against k up
// to the bound. A nonzero value at the bound means a nonzero syzygy, which
// over an artinian local ring forces infinite dimension.
HomologicalDim dims_to_homological(const std::vector<std::size_t>& dims, std::size_t bound) {
  if (dims[bound] != 0 && bound >= 1) return HomologicalDim::above_bound(bound);
  std::size_t last = 0;
  for (std::size_t i = 0; i <= bound; ++i)
    if (dims[i] != 0) last = i;
  return HomologicalDim::finite(last, bound);
}

}  // namespace

HomologicalDim RelativeEngine::fc_pd(const ModulePtr& M, std::size_t bound) {
  if (M->is_zero()) return HomologicalDim::minus_infinity(bound);
  ModulePtr X = hom_from_C(M).module;
  ModulePtr k = residue_field_module(C_->ring());
  return dims_to_homological(tor_dims(cache_, X, k, bound), bound);
}

HomologicalDim RelativeEngine::pc_pd(const ModulePtr& M, std::size_t bound) {
  if (M->is_zero()) return HomologicalDim::minus_infinity(bound);
  ModulePtr X = hom_from_C(M).module;
  ModulePtr k = residue_field_module(C_->ring());
  return dims_to_homological(ext_dims(cache_, X, k, bound), bound);
}

VanishingReport RelativeEngine::vanishing_characterization(const ModulePtr& M, std::size_t n,
                                                           std::size_t bound) {
  VanishingReport rep{n, bound, true, false, false, {}, {}};
  ModulePtr k = residue_field_module(C_->ring());
  auto dims = rel_tor_dims(RelTorFlavor::fc_m, M, k, bound, RelTorStrategy::formula);
  for (std::size_t i = n + 1; i <= bound; ++i)
    if (dims[i] != 0) rep.tor_vanishes = false;
  rep.fc = fc_pd(M, bound);
  rep.pc = pc_pd(M, bound);
  rep.fc_le_n = rep.fc.le_int(n);
  rep.pc_le_n = rep.pc.le_int(n);
  return rep;
}

ChainComplex RelativeEngine::rel_tor_les(const ShortExactSequence& ses, const ModulePtr& N,
                                         std::size_t n, LesVariable variable) {
  if (variable == LesVariable::first) {
    const HomModule& HA = hom_from_C(ses.sub());
    const HomModule& HB = hom_from_C(ses.mid());
    const HomModule& HC = hom_from_C(ses.quot());
    ShortExactSequence transported{hom_post(HA, HB, ses.inject),
                                   hom_post(HB, HC, ses.surject)};
    try {
      transported.verify();
    } catch (const NotExactError& e) {
      throw NotHomCExact(std::string("Hom(C, sequence) is not short exact: ") + e.what());
    }
    return horseshoe_les(cache_, transported, tensor_with_C(N).module, n);
  }
  const TensorModule& TA = tensor_with_C(ses.sub());
  const TensorModule& TB = tensor_with_C(ses.mid());
  const TensorModule& TC = tensor_with_C(ses.quot());
  ShortExactSequence transported{
      tensor_of_homs(TA, TB, ModuleHom::identity(C_), ses.inject),
      tensor_of_homs(TB, TC, ModuleHom::identity(C_), ses.surject)};
  try {
    transported.verify();
  } catch (const NotExactError& e) {
    throw NotTensorCExact(std::string("C (x) sequence is not short exact: ") + e.what());
  }
  return horseshoe_les(cache_, transported, hom_from_C(N).module, n);
}

BalanceTable balance_defect(RelativeEngine& engine_B, RelativeEngine& engine_C,
                            const ModulePtr& M, const ModulePtr& N,
                            const std::vector<std::size_t>& degrees) {
  std::size_t max_i = 0;
  for (std::size_t d : degrees) max_i = std::max(max_i, d);
  auto fb_m = engine_B.rel_tor_dims(RelTorFlavor::fc_m, M, N, max_i, RelTorStrategy::cross_check);
  auto m_fc = engine_C.rel_tor_dims(RelTorFlavor::m_fc, M, N, max_i, RelTorStrategy::cross_check);
  auto fc_m = engine_C.rel_tor_dims(RelTorFlavor::fc_m, M, N, max_i, RelTorStrategy::cross_check);
  auto m_fc_swapped =
      engine_C.rel_tor_dims(RelTorFlavor::m_fc, N, M, max_i, RelTorStrategy::cross_check);
  auto absolute = tor_dims(engine_C.cache(), M, N, max_i);

  BalanceTable table;
  table.degrees = degrees;
  for (std::size_t d : degrees) {
    std::array<std::size_t, 5> row{fb_m[d], m_fc[d], fc_m[d], m_fc_swapped[d], absolute[d]};
    bool flag = false;
    for (std::size_t a = 0; a < 5; ++a)
      for (std::size_t b = a + 1; b < 5; ++b)
        if (row[a] != row[b]) flag = true;
    table.dims.push_back(row);
    table.flagged.push_back(flag);
  }
  return table;
}

}  // namespace relhom
