#include "relhom/purity.hpp"

#include "util.hpp"

namespace relhom {

void SplitCertificate::verify() const {
  if (retraction.source()->dim() != inclusion.target()->dim() ||
      retraction.target()->dim() != inclusion.source()->dim())
    throw ModuleInvariantError("retraction shape mismatch");
  Matrix composite = retraction.matrix() * inclusion.matrix();
  if (!composite.is_identity())
    throw ModuleInvariantError("retraction composed with inclusion is not the identity");
  retraction.validate();
}

std::optional<SplitCertificate> is_pure_submodule(const ModuleHom& inclusion) {
  if (!inclusion.is_injective())
    throw NotInjectiveError("is_pure_submodule needs an injective map");
  const ModulePtr sub = inclusion.source();
  const ModulePtr amb = inclusion.target();
  const Field f = sub->ring()->field();

  HomModule H = hom_module(amb, sub);  // candidate retractions live here
  const std::size_t s = sub->dim();
  Matrix sys(f, s * s, H.basis.size());
  for (std::size_t j = 0; j < H.basis.size(); ++j) {
    Matrix composed = detail::flatten_row_major(H.basis[j].matrix() * inclusion.matrix());
    for (std::size_t r = 0; r < composed.rows(); ++r) sys.set(r, j, composed.at(r, 0));
  }
  Matrix rhs = detail::flatten_row_major(Matrix::identity(f, s));
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;

  Matrix retraction(f, s, amb->dim());
  for (std::size_t j = 0; j < H.basis.size(); ++j) {
    Scalar c = sol->at(j, 0);
    if (c.is_zero()) continue;
    retraction = retraction + H.basis[j].matrix().scaled(c);
  }
  SplitCertificate cert{inclusion, ModuleHom(amb, sub, std::move(retraction), false)};
  cert.verify();
  return cert;
}

SplitCertificate hom_purity_transport(const ModulePtr& L, const SplitCertificate& cert) {
  HomModule Hsub = hom_module(L, cert.inclusion.source());
  HomModule Hamb = hom_module(L, cert.inclusion.target());
  SplitCertificate out{hom_post(Hsub, Hamb, cert.inclusion),
                       hom_post(Hamb, Hsub, cert.retraction)};
  out.verify();
  return out;
}

PureFcPdReport pure_fc_pd_check(RelativeEngine& engine, const SplitCertificate& cert,
                                std::size_t bound) {
  cert.verify();
  ModulePtr sub = cert.inclusion.source();
  ModulePtr whole = cert.inclusion.target();
  ModulePtr quot = cokernel(cert.inclusion).module;

  PureFcPdReport rep{engine.fc_pd(whole, bound), engine.fc_pd(sub, bound),
                     engine.fc_pd(quot, bound), false, false};
  HomologicalDim rhs = std::max(rep.sub, rep.quotient.decremented());
  rep.inequality_holds = rhs <= rep.whole;
  rep.strict = rhs < rep.whole;
  return rep;
}

}  // namespace relhom
