#include "relhom/homalg.hpp"

#include "echelon.hpp"
#include "ops.hpp"
#include "util.hpp"

namespace relhom {

using detail::express_in_basis;
using detail::power_module;

namespace {

// R-linear extension: the map R^gens -> T sending generator j to U column j.
Matrix r_linear_extend(const AlgebraPtr& R, const FDModule& T, const Matrix& U) {
  const std::size_t d = R->dim(), gens = U.cols();
  Matrix out(R->field(), T.dim(), gens * d);
  detail::dispatch(R->field(), [&](auto ops) {
    auto& o = decltype(ops)::data(out);
    const std::size_t oc = gens * d;
    for (std::size_t i = 0; i < d; ++i) {
      Matrix moved = T.action(i) * U;
      const auto& mv = decltype(ops)::data(moved);
      for (std::size_t r = 0; r < T.dim(); ++r)
        for (std::size_t j = 0; j < gens; ++j) o[r * oc + j * d + i] = mv[r * gens + j];
    }
  });
  return out;
}

// Recover the R-entry description of an R-linear map between free modules.
RingMatrix ring_matrix_from_free_map(const AlgebraPtr& R, std::size_t row_gens,
                                     std::size_t col_gens, const Matrix& kmat) {
  const std::size_t d = R->dim();
  RingMatrix out(R, row_gens, col_gens);
  for (std::size_t c = 0; c < col_gens; ++c) {
    std::size_t src = c * d + R->unit_index();
    for (std::size_t a = 0; a < row_gens; ++a) {
      Matrix coeffs(R->field(), d, 1);
      bool nonzero = false;
      for (std::size_t l = 0; l < d; ++l) {
        Scalar v = kmat.at(a * d + l, src);
        if (!v.is_zero()) nonzero = true;
        coeffs.set(l, 0, v);
      }
      if (nonzero) out.set_entry(a, c, std::move(coeffs));
    }
  }
  return out;
}

}  // namespace

namespace detail {

Matrix Subquotient::class_of(const Matrix& ambient_cols) const {
  if (module->dim() == 0) return Matrix(ambient_cols.field(), 0, ambient_cols.cols());
  return qb.projection * express_in_basis(cycles, ambient_cols);
}

Subquotient homology_subquotient(const ModulePtr& ambient, const Matrix* d_out,
                                 const Matrix* d_in) {
  const Field f = ambient->ring()->field();
  Subquotient out;
  out.ambient = ambient;
  out.cycles = d_out ? kernel_basis(*d_out) : Matrix::identity(f, ambient->dim());
  const std::size_t z = out.cycles.cols();
  // boundaries land inside the cycles whenever the composite vanishes, which
  // the callers establish before getting here
  Matrix boundaries =
      d_in ? express_in_basis(out.cycles, image_basis(*d_in), false) : Matrix(f, z, 0);
  out.qb = quotient_basis(z, boundaries);
  const std::size_t h = out.qb.projection.rows();
  std::vector<Matrix> actions;
  Matrix reps = apply_representatives(out.cycles, out.qb.representatives);
  for (std::size_t i = 0; i < ambient->ring()->dim(); ++i) {
    if (h == 0) {
      actions.emplace_back(f, 0, 0);
      continue;
    }
    // cycles are action-stable, so the expression cannot fall outside the span
    Matrix moved = ambient->action(i) * reps;
    actions.push_back(out.qb.projection * express_in_basis(out.cycles, moved, false));
  }
  out.module = FDModule::create(ambient->ring(), h, std::move(actions), false);
  return out;
}

}  // namespace detail

namespace {
using detail::homology_subquotient;
using detail::Subquotient;
}  // namespace

RingMatrix::RingMatrix(AlgebraPtr R, std::size_t rows, std::size_t cols)
    : ring_(std::move(R)), rows_(rows), cols_(cols),
      coeffs_(ring_->field(), rows, cols * ring_->dim()) {}

Matrix RingMatrix::entry(std::size_t r, std::size_t c) const {
  const std::size_t d = ring_->dim();
  Matrix out(ring_->field(), d, 1);
  for (std::size_t l = 0; l < d; ++l) out.set(l, 0, coeffs_.at(r, c * d + l));
  return out;
}

Scalar RingMatrix::coeff(std::size_t r, std::size_t c, std::size_t l) const {
  return coeffs_.at(r, c * ring_->dim() + l);
}

bool RingMatrix::entry_is_zero(std::size_t r, std::size_t c) const {
  const std::size_t d = ring_->dim();
  for (std::size_t l = 0; l < d; ++l)
    if (!coeffs_.at(r, c * d + l).is_zero()) return false;
  return true;
}

void RingMatrix::set_entry(std::size_t r, std::size_t c, const Matrix& coeffs) {
  if (coeffs.rows() != ring_->dim() || coeffs.cols() != 1)
    throw ShapeError("ring entry has wrong shape");
  for (std::size_t l = 0; l < ring_->dim(); ++l)
    coeffs_.set(r, c * ring_->dim() + l, coeffs.at(l, 0));
}

namespace {

// (row, col) pairs of the nonzero R-entries, one raw scan
std::vector<std::pair<std::size_t, std::size_t>> nonzero_entries(const Matrix& coeffs,
                                                                 std::size_t cols,
                                                                 std::size_t d) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  detail::dispatch(coeffs.field(), [&](auto ops) {
    const auto& data = decltype(ops)::data(coeffs);
    for (std::size_t r = 0; r < coeffs.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t l = 0; l < d; ++l)
          if (!ops.is_zero(data[r * cols * d + c * d + l])) {
            out.emplace_back(r, c);
            break;
          }
      }
  });
  return out;
}

void write_block(Matrix& out, const Matrix& blk, std::size_t row0, std::size_t col0) {
  detail::dispatch(out.field(), [&](auto ops) {
    const auto& b = decltype(ops)::data(blk);
    auto& o = decltype(ops)::data(out);
    const std::size_t oc = out.cols(), bc = blk.cols();
    for (std::size_t i = 0; i < blk.rows(); ++i)
      for (std::size_t j = 0; j < bc; ++j) o[(row0 + i) * oc + col0 + j] = b[i * bc + j];
  });
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> RingMatrix::nonzeros() const {
  return nonzero_entries(coeffs_, cols_, ring_->dim());
}

Matrix RingMatrix::tensored_with(const FDModule& N) const {
  const std::size_t n = N.dim();
  Matrix out(ring_->field(), rows_ * n, cols_ * n);
  for (const auto& [r, c] : nonzero_entries(coeffs_, cols_, ring_->dim()))
    write_block(out, N.action_of(entry(r, c)), r * n, c * n);
  return out;
}

Matrix RingMatrix::hommed_into(const FDModule& N) const {
  const std::size_t n = N.dim();
  Matrix out(ring_->field(), cols_ * n, rows_ * n);
  for (const auto& [r, c] : nonzero_entries(coeffs_, cols_, ring_->dim()))
    write_block(out, N.action_of(entry(r, c)), c * n, r * n);
  return out;
}

Matrix RingMatrix::as_free_map() const {
  const std::size_t d = ring_->dim();
  Matrix out(ring_->field(), rows_ * d, cols_ * d);
  for (const auto& [r, c] : nonzero_entries(coeffs_, cols_, d))
    write_block(out, ring_->multiplication_matrix(entry(r, c)), r * d, c * d);
  return out;
}

bool RingMatrix::entries_in_radical() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!ring_->residue_of(entry(r, c)).is_zero()) return false;
  return true;
}

namespace {

// One syzygy step: minimal generators of the column span of K (an action-stable
// subspace of the free module R^prev_gens), returned as a differential. The
// updated K is the next syzygy.
void resolution_step(const AlgebraPtr& R, FreeResolution& res, Matrix& K,
                     std::size_t prev_gens) {
  const Field f = R->field();
  const std::size_t d = R->dim();
  if (K.cols() == 0) {
    res.betti.push_back(0);
    res.differentials.emplace_back(R, prev_gens, 0);
    return;
  }
  // mK in K-coordinates; the free action is applied blockwise to avoid
  // materializing large free modules.
  const Matrix& mb = R->maximal_ideal_basis();
  Matrix mK(f, K.cols(), 0);
  for (std::size_t r = 0; r < mb.cols(); ++r) {
    Matrix moved = detail::free_action_apply(R, mb.column_at(r), K, prev_gens);
    mK = Matrix::hstack(mK, express_in_basis(K, moved, false));
  }
  QuotientBasis qb = quotient_basis(K.cols(), mK);
  // representatives are unit columns, so this is a column selection
  Matrix lifted = detail::apply_representatives(K, qb.representatives);
  const std::size_t b = lifted.cols();

  RingMatrix diff(R, prev_gens, b);
  Matrix coeffs(f, d, 1);
  for (std::size_t j = 0; j < b; ++j) {
    for (std::size_t a = 0; a < prev_gens; ++a) {
      bool nonzero = false;
      for (std::size_t l = 0; l < d; ++l) {
        Scalar v = lifted.at(a * d + l, j);
        if (!v.is_zero()) nonzero = true;
        coeffs.set(l, 0, v);
      }
      if (nonzero) diff.set_entry(a, j, coeffs);
      for (std::size_t l = 0; l < d; ++l) coeffs.set_int(l, 0, 0);
    }
  }
  K = kernel_basis(diff.as_free_map());
  res.betti.push_back(b);
  res.differentials.push_back(std::move(diff));
}

void extend_resolution(FreeResolution& res, std::size_t length) {
  if (res.length() >= length) return;
  const AlgebraPtr& R = res.target->ring();
  // syzygy inside the last computed free module
  Matrix K = res.differentials.empty()
                 ? kernel_basis(res.augmentation.matrix())
                 : kernel_basis(res.differentials.back().as_free_map());
  while (res.length() < length) resolution_step(R, res, K, res.betti.back());
}

}  // namespace

FreeResolution minimal_free_resolution(const ModulePtr& M, std::size_t length) {
  const AlgebraPtr& R = M->ring();
  MinimalGenerators gens = minimal_generators(M);
  auto cover = free_module(R, gens.count);
  Matrix aug = r_linear_extend(R, *M, gens.lifts);

  FreeResolution res{M, {gens.count}, {}, ModuleHom(cover, M, aug, false)};
  extend_resolution(res, length);
  return res;
}

void FreeResolution::validate() const {
  // augmentation surjective, composite zero, exactness, minimality
  if (rank(augmentation.matrix()) != target->dim())
    throw ModuleInvariantError("augmentation not surjective");
  Matrix prev = augmentation.matrix();
  for (std::size_t i = 0; i < differentials.size(); ++i) {
    if (!differentials[i].entries_in_radical())
      throw ModuleInvariantError("resolution not minimal at step " + std::to_string(i + 1));
    Matrix km = differentials[i].as_free_map();
    if (!(prev * km).is_zero())
      throw ModuleInvariantError("composite not zero at step " + std::to_string(i + 1));
    std::size_t ker_prev = prev.cols() - rank(prev);
    if (rank(km) != ker_prev)
      throw ModuleInvariantError("not exact at step " + std::to_string(i));
    prev = std::move(km);
  }
}

std::shared_ptr<const FreeResolution> ResolutionCache::get(const ModulePtr& M,
                                                           std::size_t length) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = store_.find(M.get());
  if (it != store_.end() && it->second->length() >= length) return it->second;
  auto fresh = std::make_shared<FreeResolution>(
      it == store_.end() ? minimal_free_resolution(M, length)
                         : [&] {
                             FreeResolution copy = *it->second;
                             extend_resolution(copy, length);
                             return copy;
                           }());
  store_[M.get()] = fresh;
  pins_[M.get()] = M;
  return fresh;
}

void ResolutionCache::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  store_.clear();
  pins_.clear();
}

std::vector<std::size_t> betti_numbers(ResolutionCache& cache, const ModulePtr& M,
                                       std::size_t length) {
  return cache.get(M, length)->betti;
}

ModulePtr tor(ResolutionCache& cache, const ModulePtr& M, const ModulePtr& N, std::size_t i) {
  if (!same_ring(M->ring(), N->ring())) throw RingMismatch("tor over different rings");
  auto res = cache.get(M, i + 1);
  ModulePtr ambient = power_module(N, res->betti[i]);
  Matrix d_out, d_in;
  const Matrix* out_ptr = nullptr;
  if (i >= 1 && res->betti[i] > 0) {
    d_out = res->differentials[i - 1].tensored_with(*N);
    out_ptr = &d_out;
  }
  d_in = res->differentials[i].tensored_with(*N);
  return homology_subquotient(ambient, out_ptr, &d_in).module;
}

namespace {

// rank of d_j tensored with N, via sparse column insertion; source index
// `group_by_col` selects whether echelon columns follow the matrix columns
// (tensor) or the matrix rows (Hom)
template <class Ops>
std::size_t block_map_rank(Ops ops, const RingMatrix& d, const FDModule& N, bool hom_side) {
  const std::size_t n = N.dim();
  const std::size_t target_blocks = hom_side ? d.cols() : d.rows();
  detail::SparseEchelon<Ops> ech(ops, target_blocks * n);
  // bucket the nonzero action blocks by source block index
  const std::size_t source_blocks = hom_side ? d.rows() : d.cols();
  std::vector<std::vector<std::pair<std::size_t, Matrix>>> buckets(source_blocks);
  for (const auto& [r, c] : d.nonzeros()) {
    Matrix act = N.action_of(d.entry(r, c));
    if (hom_side) {
      buckets[r].emplace_back(c, std::move(act));
    } else {
      buckets[c].emplace_back(r, std::move(act));
    }
  }
  for (std::size_t s = 0; s < source_blocks; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      typename detail::SparseEchelon<Ops>::SVec col;
      for (const auto& [tb, blk] : buckets[s]) {
        const auto& data = Ops::data(blk);
        for (std::size_t u = 0; u < n; ++u) {
          const auto& v = data[u * n + t];
          if (!ops.is_zero(v)) col.emplace_back(static_cast<std::uint32_t>(tb * n + u), v);
        }
      }
      std::sort(col.begin(), col.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      ech.add(col);
    }
  }
  return ech.rank();
}

template <class Ops>
std::size_t tensored_rank(Ops ops, const RingMatrix& d, const FDModule& N) {
  return block_map_rank(ops, d, N, false);
}

template <class Ops>
std::size_t hommed_rank(Ops ops, const RingMatrix& d, const FDModule& N) {
  return block_map_rank(ops, d, N, true);
}

}  // namespace

std::vector<std::size_t> tor_dims(ResolutionCache& cache, const ModulePtr& M, const ModulePtr& N,
                                  std::size_t max_i) {
  if (!same_ring(M->ring(), N->ring())) throw RingMismatch("tor over different rings");
  auto res = cache.get(M, max_i + 1);
  const std::size_t n = N->dim();
  std::vector<std::size_t> ranks(max_i + 2, 0);
  detail::dispatch(N->ring()->field(), [&](auto ops) {
    for (std::size_t j = 1; j <= max_i + 1; ++j)
      ranks[j] = tensored_rank(ops, res->differentials[j - 1], *N);
  });
  std::vector<std::size_t> dims(max_i + 1);
  for (std::size_t i = 0; i <= max_i; ++i)
    dims[i] = n * res->betti[i] - ranks[i] - ranks[i + 1];
  return dims;
}

ModulePtr ext(ResolutionCache& cache, const ModulePtr& M, const ModulePtr& N, std::size_t i) {
  if (!same_ring(M->ring(), N->ring())) throw RingMismatch("ext over different rings");
  auto res = cache.get(M, i + 1);
  ModulePtr ambient = power_module(N, res->betti[i]);
  // cohomological indexing: delta^j = Hom(d_j, N) : N^{b_{j-1}} -> N^{b_j}
  Matrix d_out = res->differentials[i].hommed_into(*N);  // delta^{i+1}, leaves spot i
  Matrix d_in;
  const Matrix* in_ptr = nullptr;
  if (i >= 1) {
    d_in = res->differentials[i - 1].hommed_into(*N);  // delta^i, enters spot i
    in_ptr = &d_in;
  }
  return homology_subquotient(ambient, &d_out, in_ptr).module;
}

std::vector<std::size_t> ext_dims(ResolutionCache& cache, const ModulePtr& M, const ModulePtr& N,
                                  std::size_t max_i) {
  if (!same_ring(M->ring(), N->ring())) throw RingMismatch("ext over different rings");
  auto res = cache.get(M, max_i + 1);
  const std::size_t n = N->dim();
  std::vector<std::size_t> ranks(max_i + 2, 0);  // ranks[j] = rank delta^j
  detail::dispatch(N->ring()->field(), [&](auto ops) {
    for (std::size_t j = 1; j <= max_i + 1; ++j)
      ranks[j] = hommed_rank(ops, res->differentials[j - 1], *N);
  });
  std::vector<std::size_t> dims(max_i + 1);
  for (std::size_t i = 0; i <= max_i; ++i)
    dims[i] = n * res->betti[i] - ranks[i] - ranks[i + 1];
  return dims;
}

ChainComplex::ChainComplex(int lo, std::vector<ModulePtr> modules,
                           std::vector<ModuleHom> differentials, bool check_composites)
    : lo_(lo), modules_(std::move(modules)), differentials_(std::move(differentials)) {
  if (modules_.empty()) throw ShapeError("empty complex");
  if (differentials_.size() + 1 != modules_.size())
    throw ShapeError("complex needs one differential per adjacent pair");
  for (std::size_t j = 0; j + 1 < differentials_.size(); ++j) {
    // d_{j+1} : X_{j+1} -> X_j stored at index j
    if (check_composites && !(differentials_[j].matrix() * differentials_[j + 1].matrix()).is_zero())
      throw ModuleInvariantError("consecutive composite not zero");
  }
}

const ModulePtr& ChainComplex::module_at(int j) const {
  if (j < lo_ || j > hi()) throw IndexOutOfRange("complex index out of range");
  return modules_[static_cast<std::size_t>(j - lo_)];
}

const ModuleHom& ChainComplex::differential_at(int j) const {
  if (j <= lo_ || j > hi()) throw IndexOutOfRange("differential index out of range");
  return differentials_[static_cast<std::size_t>(j - lo_ - 1)];
}

ModulePtr ChainComplex::homology(int j) const {
  const ModulePtr& amb = module_at(j);
  const Matrix* out_ptr = nullptr;
  const Matrix* in_ptr = nullptr;
  Matrix d_out, d_in;
  if (j > lo_) {
    d_out = differential_at(j).matrix();
    out_ptr = &d_out;
  }
  if (j < hi()) {
    d_in = differential_at(j + 1).matrix();
    in_ptr = &d_in;
  }
  return homology_subquotient(amb, out_ptr, in_ptr).module;
}

ChainComplex::ExactnessReport ChainComplex::is_exact() const {
  for (int j = lo_ + 1; j < hi(); ++j) {
    std::size_t dim_j = module_at(j)->dim();
    std::size_t ker = dim_j - rank(differential_at(j).matrix());
    std::size_t im = rank(differential_at(j + 1).matrix());
    if (ker != im) return {false, j, ker - im};
  }
  return {};
}

void ShortExactSequence::verify() const {
  if (inject.target() != surject.source() && inject.target()->dim() != surject.source()->dim())
    throw NotExactError("middle modules disagree");
  if (!inject.is_injective()) throw NotExactError("left map not injective");
  if (!surject.is_surjective()) throw NotExactError("right map not surjective");
  if (!(surject.matrix() * inject.matrix()).is_zero())
    throw NotExactError("composite not zero");
  if (rank(inject.matrix()) + rank(surject.matrix()) != surject.source()->dim())
    throw NotExactError("not exact in the middle");
}

ChainComplex horseshoe_les(ResolutionCache& cache, const ShortExactSequence& ses,
                           const ModulePtr& N, std::size_t n) {
  ses.verify();
  const ModulePtr A = ses.sub(), B = ses.mid(), C = ses.quot();
  const AlgebraPtr R = A->ring();
  const Field f = R->field();
  const std::size_t d = R->dim();
  if (!same_ring(N->ring(), R)) throw RingMismatch("horseshoe_les over different rings");

  auto FA = cache.get(A, n + 1);
  auto FC = cache.get(C, n + 2);

  // sigma_0 : R^{bC_0} -> B lifting the C-augmentation through the surjection
  auto lift_gens = [&](const Matrix& images, const Matrix& through) {
    auto sol = solve(through, images);
    if (!sol) throw ModuleInvariantError("horseshoe lift inconsistent");
    return *sol;
  };
  auto gen_images = [&](const Matrix& kmat, std::size_t gens) {
    Matrix out(f, kmat.rows(), gens);
    for (std::size_t j = 0; j < gens; ++j)
      for (std::size_t r = 0; r < kmat.rows(); ++r)
        out.set(r, j, kmat.at(r, j * d + R->unit_index()));
    return out;
  };

  Matrix sigma0 = r_linear_extend(
      R, *B, lift_gens(gen_images(FC->augmentation.matrix(), FC->betti[0]), ses.surject.matrix()));

  // theta_i : R^{bC_i} -> R^{bA_{i-1}}, making the middle differentials square
  std::vector<Matrix> theta;  // theta[i-1] = theta_i as a k-matrix
  for (std::size_t i = 1; i <= n + 1; ++i) {
    Matrix dC = FC->free_map(i);
    Matrix w;
    if (i == 1) {
      // f(epsA(theta_1(gen))) = -sigma_0(dC_1(gen))
      Matrix v = gen_images(sigma0 * dC, FC->betti[1]);
      Matrix x = lift_gens(-v, ses.inject.matrix());
      w = lift_gens(x, FA->augmentation.matrix());
    } else {
      Matrix v = gen_images(theta[i - 2] * dC, FC->betti[i]);
      w = lift_gens(-v, FA->free_map(i - 1));
    }
    auto freeA = free_module(R, FA->betti[i - 1]);
    theta.push_back(r_linear_extend(R, *freeA, w));
  }

  // middle differentials as ring matrices (blocks [[dA, theta], [0, dC]])
  std::vector<RingMatrix> dB;
  for (std::size_t i = 1; i <= n + 1; ++i) {
    std::size_t rows = FA->betti[i - 1] + FC->betti[i - 1];
    std::size_t cols = FA->betti[i] + FC->betti[i];
    RingMatrix m(R, rows, cols);
    for (std::size_t r = 0; r < FA->betti[i - 1]; ++r)
      for (std::size_t c = 0; c < FA->betti[i]; ++c)
        m.set_entry(r, c, FA->differentials[i - 1].entry(r, c));
    for (std::size_t r = 0; r < FC->betti[i - 1]; ++r)
      for (std::size_t c = 0; c < FC->betti[i]; ++c)
        m.set_entry(FA->betti[i - 1] + r, FA->betti[i] + c,
                    FC->differentials[i - 1].entry(r, c));
    RingMatrix th = ring_matrix_from_free_map(R, FA->betti[i - 1], FC->betti[i], theta[i - 1]);
    for (std::size_t r = 0; r < FA->betti[i - 1]; ++r)
      for (std::size_t c = 0; c < FC->betti[i]; ++c)
        m.set_entry(r, FA->betti[i] + c, th.entry(r, c));
    dB.push_back(std::move(m));
  }

  // tensor the three resolutions with N and take homology
  std::vector<Subquotient> HA, HB, HC;
  auto spot = [&](const std::vector<std::size_t>& betti,
                  const std::vector<RingMatrix>& diffs, std::size_t i) {
    ModulePtr ambient = power_module(N, betti[i]);
    Matrix d_out, d_in;
    const Matrix* out_ptr = nullptr;
    const Matrix* in_ptr = nullptr;
    if (i >= 1) {
      d_out = diffs[i - 1].tensored_with(*N);
      out_ptr = &d_out;
    }
    if (i < diffs.size()) {
      d_in = diffs[i].tensored_with(*N);
      in_ptr = &d_in;
    }
    return homology_subquotient(ambient, out_ptr, in_ptr);
  };
  std::vector<std::size_t> bettiB;
  for (std::size_t i = 0; i <= n + 1; ++i) bettiB.push_back(FA->betti[i] + FC->betti[i]);
  for (std::size_t i = 0; i <= n; ++i) {
    HA.push_back(spot(FA->betti, FA->differentials, i));
    HB.push_back(spot(bettiB, dB, i));
    HC.push_back(spot(FC->betti, FC->differentials, i));
  }
  HC.push_back(spot(FC->betti, FC->differentials, n + 1));

  const std::size_t nN = N->dim();
  auto block_inclusion = [&](std::size_t bA, std::size_t bC) {
    Matrix m(f, (bA + bC) * nN, bA * nN);
    for (std::size_t i = 0; i < bA * nN; ++i) m.set_int(i, i, 1);
    return m;
  };
  auto block_projection = [&](std::size_t bA, std::size_t bC) {
    Matrix m(f, bC * nN, (bA + bC) * nN);
    for (std::size_t i = 0; i < bC * nN; ++i) m.set_int(i, bA * nN + i, 1);
    return m;
  };

  // assemble the long exact sequence, spot 3i+1 = Tor_i(C), 3i+2 = Tor_i(B),
  // 3i+3 = Tor_i(A); spot 0 and the top spot Tor_{n+1}(C) pad the ends.
  std::vector<ModulePtr> mods;
  std::vector<ModuleHom> maps;
  mods.push_back(zero_module(R));
  for (std::size_t i = 0; i <= n; ++i) {
    mods.push_back(HC[i].module);
    mods.push_back(HB[i].module);
    mods.push_back(HA[i].module);
  }
  mods.push_back(HC[n + 1].module);

  for (std::size_t i = 0; i <= n + 1; ++i) {
    if (i == 0) {
      maps.push_back(ModuleHom::zero(HC[0].module, mods[0]));
    } else {
      // delta_i : Tor_i(C) -> Tor_{i-1}(A): lift cycle into middle, push down,
      // read off the first block
      Matrix reps = HC[i].representatives();  // ambient N^{bC_i}
      Matrix lifted(f, bettiB[i] * nN, reps.cols());
      for (std::size_t r = 0; r < reps.rows(); ++r)
        for (std::size_t c = 0; c < reps.cols(); ++c) {
          Scalar v = reps.at(r, c);
          if (!v.is_zero()) lifted.set(FA->betti[i] * nN + r, c, v);
        }
      Matrix pushed = dB[i - 1].tensored_with(*N) * lifted;
      // second block must vanish since the lifted columns were cycles
      for (std::size_t r = 0; r < FC->betti[i - 1] * nN; ++r)
        for (std::size_t c = 0; c < pushed.cols(); ++c)
          if (!pushed.at(FA->betti[i - 1] * nN + r, c).is_zero())
            throw ModuleInvariantError("horseshoe connecting map leaked into the quotient block");
      Matrix first(f, FA->betti[i - 1] * nN, pushed.cols());
      for (std::size_t r = 0; r < first.rows(); ++r)
        for (std::size_t c = 0; c < first.cols(); ++c) first.set(r, c, pushed.at(r, c));
      maps.emplace_back(HC[i].module, HA[i - 1].module, HA[i - 1].class_of(first), false);
    }
    if (i <= n) {
      // beta_i : Tor_i(B) -> Tor_i(C)
      Matrix img = block_projection(FA->betti[i], FC->betti[i]) * HB[i].representatives();
      maps.emplace_back(HB[i].module, HC[i].module, HC[i].class_of(img), false);
      // alpha_i : Tor_i(A) -> Tor_i(B)
      Matrix img2 = block_inclusion(FA->betti[i], FC->betti[i]) * HA[i].representatives();
      maps.emplace_back(HA[i].module, HB[i].module, HB[i].class_of(img2), false);
    }
  }

  ChainComplex les(0, std::move(mods), std::move(maps));
  auto report = les.is_exact();
  if (!report.exact)
    throw ModuleInvariantError("horseshoe long exact sequence failed exactness at spot " +
                               std::to_string(report.first_failure));
  return les;
}

}  // namespace relhom
