#include "relhom/semidualizing.hpp"

namespace relhom {

ModulePtr canonical_module(const AlgebraPtr& R) { return matlis_dual(free_module(R, 1)); }

SemidualizingCheck is_semidualizing(ResolutionCache& cache, const ModulePtr& C,
                                    std::size_t bound) {
  SemidualizingCheck out{false, {}, "", 0};
  if (C->is_zero()) {
    out.refusal = "zero module is not semidualizing";
    return out;
  }
  ModuleHom chi = homothety_map(C);
  if (!chi.is_bijective()) {
    out.refusal = "homothety R -> Hom(C,C) is not bijective: dim Hom(C,C) = " +
                  std::to_string(chi.target()->dim()) + ", dim R = " +
                  std::to_string(C->ring()->dim());
    return out;
  }
  auto dims = ext_dims(cache, C, C, bound);
  for (std::size_t i = 1; i <= bound; ++i) {
    if (dims[i] != 0) {
      out.refusal = "Ext^" + std::to_string(i) + "(C,C) has dimension " +
                    std::to_string(dims[i]) + ", expected 0";
      out.witness_degree = i;
      return out;
    }
  }
  out.ok = true;
  out.certificate = SemidualizingCertificate{C, bound, true, bound};
  return out;
}

namespace {

bool is_free(ResolutionCache& cache, const ModulePtr& M) {
  if (M->is_zero()) return true;
  return betti_numbers(cache, M, 1)[1] == 0;
}

}  // namespace

ClassVerdict in_auslander_class(ResolutionCache& cache, const ModulePtr& C, const ModulePtr& M,
                                std::size_t bound) {
  auto tor_v = tor_dims(cache, C, M, bound);
  for (std::size_t i = 1; i <= bound; ++i)
    if (tor_v[i] != 0)
      return {ClassVerdictKind::out, "Tor_" + std::to_string(i) + "(C, M) != 0", bound};
  ModulePtr CM = tensor_module(C, M).module;
  auto ext_v = ext_dims(cache, C, CM, bound);
  for (std::size_t i = 1; i <= bound; ++i)
    if (ext_v[i] != 0)
      return {ClassVerdictKind::out, "Ext^" + std::to_string(i) + "(C, C(x)M) != 0", bound};
  ModuleHom gamma = biduality_map(C, M);
  if (!gamma.is_bijective())
    return {ClassVerdictKind::out, "biduality map M -> Hom(C, C(x)M) is not bijective", bound};
  if (is_free(cache, M))
    return {ClassVerdictKind::in_class, "finite flat dimension (free module)", bound};
  return {ClassVerdictKind::unknown_at_bound, "all checks pass up to the bound", bound};
}

ClassVerdict in_bass_class(ResolutionCache& cache, const ModulePtr& C, const ModulePtr& M,
                           std::size_t bound) {
  auto ext_v = ext_dims(cache, C, M, bound);
  for (std::size_t i = 1; i <= bound; ++i)
    if (ext_v[i] != 0)
      return {ClassVerdictKind::out, "Ext^" + std::to_string(i) + "(C, M) != 0", bound};
  ModulePtr HCM = hom_module(C, M).module;
  auto tor_v = tor_dims(cache, C, HCM, bound);
  for (std::size_t i = 1; i <= bound; ++i)
    if (tor_v[i] != 0)
      return {ClassVerdictKind::out, "Tor_" + std::to_string(i) + "(C, Hom(C,M)) != 0", bound};
  ModuleHom xi = evaluation_map(C, M);
  if (!xi.is_bijective())
    return {ClassVerdictKind::out, "evaluation map C(x)Hom(C,M) -> M is not bijective", bound};
  if (is_free(cache, HCM))
    return {ClassVerdictKind::in_class, "Hom(C, M) is free (finite C-flat dimension)", bound};
  return {ClassVerdictKind::unknown_at_bound, "all checks pass up to the bound", bound};
}

ModulePtr foxby_transport(const ModulePtr& C, const ModulePtr& M, FoxbyDirection direction) {
  if (direction == FoxbyDirection::down) return hom_module(C, M).module;
  return tensor_module(C, M).module;
}

}  // namespace relhom
