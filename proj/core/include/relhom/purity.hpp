#pragma once

#include "relhom/relative.hpp"

namespace relhom {

class NotInjectiveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Witness that a submodule inclusion splits: a retraction with
/// retraction . inclusion = id. Over the finite-length modules here, purity
/// and splitness coincide, so this certificate decides purity.
struct SplitCertificate {
  ModuleHom inclusion;
  ModuleHom retraction;

  void verify() const;  // throws ModuleInvariantError when not a retraction
};

/// Decides purity of a submodule inclusion by solving r . i = id inside
/// Hom(M, M'). Returns the certificate, or nullopt when the linear system is
/// inconsistent (not a summand, hence not pure at finite length).
std::optional<SplitCertificate> is_pure_submodule(const ModuleHom& inclusion);

/// Hom(L, -) applied to a split pair: the induced inclusion
/// Hom(L, M') -> Hom(L, M) with its induced retraction, verified.
SplitCertificate hom_purity_transport(const ModulePtr& L, const SplitCertificate& cert);

struct PureFcPdReport {
  HomologicalDim whole, sub, quotient;
  bool inequality_holds;  // fc-pd(M) >= max(fc-pd(M'), fc-pd(M/M') - 1)
  bool strict;            // strictly greater
};

/// Evaluates the pure-submodule bound on F_C-projective dimension for a split
/// pair, with the bound-honest ordering -inf < 0 < ... < above-bound.
PureFcPdReport pure_fc_pd_check(RelativeEngine& engine, const SplitCertificate& cert,
                                std::size_t bound);

}  // namespace relhom
