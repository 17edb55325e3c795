#pragma once

#include "relhom/homalg.hpp"

namespace relhom {

/// The canonical (dualizing) module of an artinian local k-algebra: the
/// k-linear dual of R. Over Gorenstein rings it is isomorphic to R.
ModulePtr canonical_module(const AlgebraPtr& R);

struct SemidualizingCertificate {
  ModulePtr module;
  std::size_t bound;
  bool homothety_ok;
  std::size_t ext_vanishing_checked_to;
};

/// Outcome of the semidualizing axioms check: either a bound-honest
/// certificate or a refusal naming the failing axiom with its witness.
struct SemidualizingCheck {
  bool ok;
  SemidualizingCertificate certificate;  // meaningful when ok
  std::string refusal;                   // meaningful when !ok
  std::size_t witness_degree = 0;        // Ext degree for vanishing failures
};

SemidualizingCheck is_semidualizing(ResolutionCache& cache, const ModulePtr& C,
                                    std::size_t bound);

enum class ClassVerdictKind { in_class, out, unknown_at_bound };

struct ClassVerdict {
  ClassVerdictKind kind;
  std::string detail;  // first failing check, or the structural reason for IN
  std::size_t bound;

  bool admitted() const { return kind != ClassVerdictKind::out; }
};

/// Auslander class membership: Tor_i(C, M) = 0 and Ext^i(C, C (x) M) = 0 for
/// 1 <= i <= bound, plus bijectivity of M -> Hom(C, C (x) M). IN is reserved
/// for structurally certified members (finite flat dimension, i.e. free
/// here); a clean bound-limited pass reports unknown_at_bound.
ClassVerdict in_auslander_class(ResolutionCache& cache, const ModulePtr& C, const ModulePtr& M,
                                std::size_t bound);

/// Bass class membership: Ext^i(C, M) = 0 and Tor_i(C, Hom(C, M)) = 0 for
/// 1 <= i <= bound, plus bijectivity of C (x) Hom(C, M) -> M. IN is reserved
/// for members with Hom(C, M) free (finite C-flat dimension).
ClassVerdict in_bass_class(ResolutionCache& cache, const ModulePtr& C, const ModulePtr& M,
                           std::size_t bound);

enum class FoxbyDirection { down, up };  // down = Hom(C, -), up = C (x) -

ModulePtr foxby_transport(const ModulePtr& C, const ModulePtr& M, FoxbyDirection direction);

}  // namespace relhom
