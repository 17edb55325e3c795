#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relhom/algebra.hpp"
#include "relhom/matrix.hpp"

namespace relhom {

class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ModuleInvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FDModule;
using ModulePtr = std::shared_ptr<const FDModule>;

/// A finitely generated R-module presented as a finite-dimensional k-space
/// with one action matrix per algebra basis element.
class FDModule {
 public:
  /// Validates: unit acts as identity, actions commute and respect the
  /// structure constants. Pass check=false only when construction guarantees
  /// the invariants (the validator stays available for tests).
  static ModulePtr create(AlgebraPtr ring, std::size_t dim, std::vector<Matrix> actions,
                          bool check = true);

  const AlgebraPtr& ring() const { return ring_; }
  std::size_t dim() const { return dim_; }
  bool is_zero() const { return dim_ == 0; }

  const Matrix& action(std::size_t basis_index) const { return actions_[basis_index]; }
  /// Action of an arbitrary ring element (dim(R) x 1 coefficients).
  Matrix action_of(const Matrix& element) const;

  void validate() const;

 private:
  FDModule(AlgebraPtr ring, std::size_t dim, std::vector<Matrix> actions)
      : ring_(std::move(ring)), dim_(dim), actions_(std::move(actions)) {}

  AlgebraPtr ring_;
  std::size_t dim_;
  std::vector<Matrix> actions_;
};

/// An R-linear map between FDModules: a k-matrix commuting with every action.
class ModuleHom {
 public:
  ModuleHom(ModulePtr source, ModulePtr target, Matrix matrix, bool check = true);

  const ModulePtr& source() const { return source_; }
  const ModulePtr& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }

  ModuleHom inverse() const;  // bijective maps only
  static ModuleHom compose(const ModuleHom& g, const ModuleHom& f);  // g after f
  static ModuleHom identity(ModulePtr m);
  static ModuleHom zero(ModulePtr source, ModulePtr target);

  void validate() const;  // throws ModuleInvariantError when not R-linear

 private:
  ModulePtr source_, target_;
  Matrix matrix_;
};

ModulePtr free_module(AlgebraPtr R, std::size_t n);
ModulePtr residue_field_module(AlgebraPtr R);
ModulePtr zero_module(AlgebraPtr R);

/// Is the k-matrix at hand the free cover basis convention: the free module
/// R^n has basis (generator j, ring basis i) at index j * dim(R) + i.
Matrix free_generator_column(const AlgebraPtr& R, std::size_t n, std::size_t j);

struct HomModule {
  ModulePtr module;              // Hom_R(M, N) as an R-module
  std::vector<ModuleHom> basis;  // realization of each basis vector
  ModulePtr arg_source, arg_target;
};
HomModule hom_module(const ModulePtr& M, const ModulePtr& N);

struct TensorModule {
  ModulePtr module;        // M (x)_R N
  Matrix projection;       // dim x (dim M * dim N), from the k-tensor square
  Matrix representatives;  // section of the projection
  ModulePtr left, right;
};
/// Basis convention in the ambient k-tensor: (a, b) -> a * dim(N) + b.
TensorModule tensor_module(const ModulePtr& M, const ModulePtr& N);

/// Induced map M (x) N -> M' (x) N' from f: M -> M' and g: N -> N'.
ModuleHom tensor_of_homs(const TensorModule& src, const TensorModule& dst, const ModuleHom& f,
                         const ModuleHom& g);

/// Induced map Hom(L, N) -> Hom(L, N') by post-composition with g: N -> N'.
ModuleHom hom_post(const HomModule& src, const HomModule& dst, const ModuleHom& g);
/// Induced map Hom(B, N) -> Hom(A, N) by pre-composition with f: A -> B.
ModuleHom hom_pre(const HomModule& src, const HomModule& dst, const ModuleHom& f);

/// k-linear dual with transposed actions; exact and dimension-preserving,
/// and an involution on the nose.
ModulePtr matlis_dual(const ModulePtr& M);

struct Submodule {
  ModulePtr module;
  ModuleHom inclusion;
};
struct QuotientModule {
  ModulePtr module;
  ModuleHom projection;
};

Submodule kernel(const ModuleHom& f);
Submodule image(const ModuleHom& f);
QuotientModule cokernel(const ModuleHom& f);

/// Smallest R-submodule containing the given column vectors.
Submodule submodule_spanned_by(const ModulePtr& M, const Matrix& columns);
/// Quotient by an R-stable subspace given by spanning columns.
QuotientModule quotient_by(const ModulePtr& M, const Matrix& columns);

struct MinimalGenerators {
  std::size_t count;  // beta_0 = dim M / mM
  Matrix lifts;       // dim(M) x count, images form a basis of M/mM
};
MinimalGenerators minimal_generators(const ModulePtr& M);

enum class IsoKind { yes, no, no_uncertified };
struct IsoResult {
  IsoKind kind;
  std::optional<ModuleHom> witness;
  std::string reason;
};
/// Certified YES carries an invertible hom. Certified NO rests on invariant
/// mismatch (dimension or minimal generator count). When invariants agree but
/// the randomized/exhaustive search finds no unit, the verdict is
/// no_uncertified rather than a claimed NO.
IsoResult is_isomorphic(const ModulePtr& M, const ModulePtr& N);

/// Natural evaluation C (x) Hom(C, M) -> M; source is freshly constructed,
/// so the returned hom's source() carries the identification.
ModuleHom evaluation_map(const ModulePtr& C, const ModulePtr& M);
/// Same map against caller-supplied identifications of Hom(C, M) and
/// C (x) Hom(C, M).
ModuleHom evaluation_map_with(const TensorModule& T, const HomModule& H, const ModulePtr& M);
/// Natural map M -> Hom(C, C (x) M).
ModuleHom biduality_map(const ModulePtr& C, const ModulePtr& M);
/// Homothety R -> Hom(C, C).
ModuleHom homothety_map(const ModulePtr& C);

struct DirectSum {
  ModulePtr module;
  ModuleHom incl_left, incl_right;
  ModuleHom proj_left, proj_right;
};
DirectSum direct_sum(const ModulePtr& M, const ModulePtr& N);

/// Basis of the ideal {r in R : r M = 0}, as dim(R) x t columns.
Matrix annihilator(const ModulePtr& M);

/// True when the ideal spanned by `element_columns` is contained in the ideal
/// spanned by `ideal_basis` (both as subspaces of R, R-stability assumed).
bool ideal_contained_in(const AlgebraPtr& R, const Matrix& element_columns,
                        const Matrix& ideal_basis);

}  // namespace relhom
