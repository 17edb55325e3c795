#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "relhom/module.hpp"

namespace relhom {

class NotExactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class IndexOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Matrix with entries in R: the natural carrier for maps between free
/// modules. Entry (r, c) is a dim(R) x 1 coefficient vector; storage is one
/// flat coefficient matrix so large differentials stay compact.
class RingMatrix {
 public:
  RingMatrix(AlgebraPtr R, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const AlgebraPtr& ring() const { return ring_; }

  Matrix entry(std::size_t r, std::size_t c) const;  // dim(R) x 1 coefficients
  Scalar coeff(std::size_t r, std::size_t c, std::size_t l) const;
  bool entry_is_zero(std::size_t r, std::size_t c) const;
  void set_entry(std::size_t r, std::size_t c, const Matrix& coeffs);
  /// (row, col) positions of the nonzero entries, one linear scan.
  std::vector<std::pair<std::size_t, std::size_t>> nonzeros() const;

  /// k-matrix of the induced map N^cols -> N^rows (entrywise action blocks).
  Matrix tensored_with(const FDModule& N) const;
  /// k-matrix of Hom(-, N) applied to this map: N^rows -> N^cols.
  Matrix hommed_into(const FDModule& N) const;
  /// k-matrix of the free map R^cols -> R^rows.
  Matrix as_free_map() const;

  /// Every entry lies in the maximal ideal (minimality of a resolution).
  bool entries_in_radical() const;

 private:
  AlgebraPtr ring_;
  std::size_t rows_, cols_;
  Matrix coeffs_;  // rows x (cols * dim R); entry (r, c) at columns c*d .. c*d+d-1
};

/// Minimal free resolution of an FDModule up to a requested length. The
/// dense k-matrices of the differentials are recomputed on demand rather than
/// stored; resolutions of the larger corpus modules would otherwise dominate
/// memory once cached.
struct FreeResolution {
  ModulePtr target;
  std::vector<std::size_t> betti;         // beta_0 .. beta_n
  std::vector<RingMatrix> differentials;  // d_1 .. d_n, d_i : R^{b_i} -> R^{b_{i-1}}
  ModuleHom augmentation;                 // R^{b_0} -> target

  std::size_t length() const { return betti.size() - 1; }
  Matrix free_map(std::size_t i) const { return differentials[i - 1].as_free_map(); }
  /// Checks d.d = 0, exactness at interior spots, and minimality.
  void validate() const;
};

FreeResolution minimal_free_resolution(const ModulePtr& M, std::size_t length);

/// Shared, lock-protected memo for resolutions keyed by module identity.
/// Purely an optimization: results never depend on cache state.
class ResolutionCache {
 public:
  std::shared_ptr<const FreeResolution> get(const ModulePtr& M, std::size_t length);
  void clear();

 private:
  std::mutex mu_;
  std::map<const FDModule*, std::shared_ptr<const FreeResolution>> store_;
  std::map<const FDModule*, ModulePtr> pins_;
};

std::vector<std::size_t> betti_numbers(ResolutionCache& cache, const ModulePtr& M,
                                       std::size_t length);

/// Absolute Tor_i(M, N) via a minimal free resolution of M.
ModulePtr tor(ResolutionCache& cache, const ModulePtr& M, const ModulePtr& N, std::size_t i);
/// dim_k Tor_i(M, N) for 0 <= i <= max_i, computed without materializing
/// the tensored modules.
std::vector<std::size_t> tor_dims(ResolutionCache& cache, const ModulePtr& M, const ModulePtr& N,
                                  std::size_t max_i);

/// Absolute Ext^i(M, N) via Hom(resolution of M, N).
ModulePtr ext(ResolutionCache& cache, const ModulePtr& M, const ModulePtr& N, std::size_t i);
std::vector<std::size_t> ext_dims(ResolutionCache& cache, const ModulePtr& M, const ModulePtr& N,
                                  std::size_t max_i);

/// Bounded complex of FDModules: modules at indices lo..hi with differentials
/// d_j : X_j -> X_{j-1} for lo < j <= hi. Composites are checked at build time.
class ChainComplex {
 public:
  ChainComplex(int lo, std::vector<ModulePtr> modules, std::vector<ModuleHom> differentials,
               bool check_composites = true);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(modules_.size()) - 1; }
  const ModulePtr& module_at(int j) const;
  const ModuleHom& differential_at(int j) const;  // d_j

  ModulePtr homology(int j) const;  // boundary differentials treated as zero

  struct ExactnessReport {
    bool exact = true;
    int first_failure = 0;
    std::size_t homology_dim = 0;
  };
  /// Homology vanishing at every spot strictly inside [lo, hi].
  ExactnessReport is_exact() const;

 private:
  int lo_;
  std::vector<ModulePtr> modules_;
  std::vector<ModuleHom> differentials_;
};

/// 0 -> A --inject--> B --surject--> C -> 0; verified on construction.
struct ShortExactSequence {
  ModuleHom inject;
  ModuleHom surject;

  const ModulePtr& sub() const { return inject.source(); }
  const ModulePtr& mid() const { return inject.target(); }
  const ModulePtr& quot() const { return surject.target(); }

  /// Throws NotExactError unless 0 -> A -> B -> C -> 0 is exact.
  void verify() const;
};

/// The Tor long exact sequence of a short exact sequence against N, through
/// homological degree n, with explicit connecting maps from a simultaneous
/// (horseshoe) resolution. Returned complex is index 0 = Tor_0(C, N) spot,
/// padded with zero modules at both ends so every spot is interior, and is
/// machine-checked exact.
ChainComplex horseshoe_les(ResolutionCache& cache, const ShortExactSequence& ses,
                           const ModulePtr& N, std::size_t n);

}  // namespace relhom
