#include <doctest.h>

#include <random>

#include "relhom/corpus.hpp"
#include "relhom/semidualizing.hpp"

using namespace relhom;

namespace {

Corpus sq5() { return build_corpus("square_zero_2vars", Field::prime(5)); }

}  // namespace

TEST_CASE("free and residue field modules") {
  Corpus c = sq5();
  CHECK(free_module(c.ring, 0)->is_zero());
  CHECK(free_module(c.ring, 2)->dim() == 6);
  ModulePtr k = residue_field_module(c.ring);
  CHECK(k->dim() == 1);
  CHECK(k->action(1).is_zero());
  CHECK(k->action(2).is_zero());
  for (const auto& [name, M] : c.modules) {
    CAPTURE(name);
    CHECK_NOTHROW(M->validate());
  }
}

TEST_CASE("hom module dimensions from the worked example") {
  Corpus c = sq5();
  ModulePtr C = c.module("omega");
  ModulePtr k = c.module("k");
  ModulePtr R = c.module("R");

  // Hom(R, N) = N via evaluation at 1
  CHECK(hom_module(R, C).module->dim() == C->dim());
  CHECK(hom_module(R, k).module->dim() == 1);

  // dim Hom(C, C) = dim R = 3 (homothety is an isomorphism)
  CHECK(hom_module(C, C).module->dim() == 3);

  // Hom(C, k) = k^{beta_0(C)} = k^2
  HomModule hck = hom_module(C, k);
  CHECK(hck.module->dim() == 2);
  for (const auto& h : hck.basis) h.validate();
}

TEST_CASE("tensor module dimensions from the worked example") {
  Corpus c = sq5();
  ModulePtr C = c.module("omega");
  ModulePtr k = c.module("k");
  ModulePtr R = c.module("R");

  // R (x) M = M
  TensorModule rm = tensor_module(R, C);
  CHECK(rm.module->dim() == C->dim());

  // C (x) C has dimension 4 with trivial radical action
  TensorModule cc = tensor_module(C, C);
  CHECK(cc.module->dim() == 4);
  CHECK(cc.module->action(1).is_zero());
  CHECK(cc.module->action(2).is_zero());

  // k (x) C has dimension beta_0(C) = 2
  CHECK(tensor_module(k, C).module->dim() == 2);
}

TEST_CASE("matlis duality") {
  Corpus c = sq5();
  ModulePtr R = c.module("R");
  ModulePtr k = c.module("k");
  ModulePtr omega = matlis_dual(R);
  CHECK(omega->dim() == 3);
  CHECK(minimal_generators(omega).count == 2);

  ModulePtr kd = matlis_dual(k);
  CHECK(kd->dim() == 1);
  CHECK(is_isomorphic(kd, k).kind == IsoKind::yes);

  // double dual is the module on the nose (transpose involution)
  for (const auto& [name, M] : c.modules) {
    ModulePtr dd = matlis_dual(matlis_dual(M));
    CHECK(dd->dim() == M->dim());
    for (std::size_t i = 0; i < c.ring->dim(); ++i) CHECK(dd->action(i) == M->action(i));
  }

  // contravariant exactness: dim Hom(M, N) = dim Hom(dual N, dual M)
  for (const auto& [nm, M] : c.modules)
    for (const auto& [nn, N] : c.modules)
      CHECK(hom_module(M, N).module->dim() ==
            hom_module(matlis_dual(N), matlis_dual(M)).module->dim());
}

TEST_CASE("kernel, image, cokernel") {
  Corpus c = sq5();
  ModulePtr R = c.module("R");
  ModulePtr k = c.module("k");

  CHECK(kernel(ModuleHom::identity(R)).module->is_zero());

  ModuleHom res = residue_surjection(c.ring);
  Submodule m = kernel(res);
  CHECK(m.module->dim() == 2);
  m.inclusion.validate();

  QuotientModule q = cokernel(m.inclusion);
  CHECK(q.module->dim() == 1);
  CHECK(is_isomorphic(q.module, k).kind == IsoKind::yes);

  Submodule im = image(res);
  CHECK(im.module->dim() == 1);
  CHECK(kernel(res).module->dim() + im.module->dim() == R->dim());
}

TEST_CASE("minimal generators and Nakayama") {
  Corpus c = sq5();
  CHECK(minimal_generators(free_module(c.ring, 3)).count == 3);
  CHECK(minimal_generators(c.module("omega")).count == 2);
  CHECK(minimal_generators(c.module("k")).count == 1);
  CHECK(minimal_generators(zero_module(c.ring)).count == 0);
  for (const auto& [name, M] : c.modules) {
    CAPTURE(name);
    CHECK((minimal_generators(M).count == 0) == M->is_zero());
  }
}

TEST_CASE("isomorphism verdicts") {
  Corpus c = sq5();
  ModulePtr C = c.module("omega");
  ModulePtr k = c.module("k");
  ModulePtr R = c.module("R");

  IsoResult self = is_isomorphic(C, C);
  REQUIRE(self.kind == IsoKind::yes);
  self.witness->validate();
  CHECK(self.witness->is_bijective());

  ModulePtr k4 = direct_sum(direct_sum(k, k).module, direct_sum(k, k).module).module;
  IsoResult cc_iso = is_isomorphic(c.module("omega_tensor_omega"), k4);
  REQUIRE(cc_iso.kind == IsoKind::yes);
  cc_iso.witness->validate();

  IsoResult no = is_isomorphic(R, C);
  CHECK(no.kind == IsoKind::no);
  CHECK(no.reason.find("generator") != std::string::npos);

  // R and omega over a Gorenstein preset are isomorphic with a witness
  Corpus g = build_corpus("truncated_poly_3", Field::prime(5));
  IsoResult gor = is_isomorphic(g.module("R"), g.module("omega"));
  REQUIRE(gor.kind == IsoKind::yes);
  gor.witness->validate();
}

TEST_CASE("evaluation, biduality, homothety") {
  Corpus c = sq5();
  ModulePtr C = c.module("omega");
  ModulePtr R = c.module("R");
  ModulePtr k = c.module("k");

  // xi^R_M : R (x) Hom(R, M) -> M is an isomorphism
  for (const ModulePtr& M : {C, k, R}) {
    ModuleHom xi = evaluation_map(R, M);
    xi.validate();
    CHECK(xi.is_bijective());
  }

  // xi^C_C is bijective (C lies in its own Bass class)
  ModuleHom xc = evaluation_map(C, C);
  CHECK(xc.is_bijective());

  // homothety R -> Hom(C, C) bijective for the canonical module
  ModuleHom chi = homothety_map(C);
  chi.validate();
  CHECK(chi.is_bijective());

  // biduality M -> Hom(C, C (x) M) bijective for free M
  ModuleHom gamma = biduality_map(C, R);
  gamma.validate();
  CHECK(gamma.is_bijective());

  // evaluation is an isomorphism for finite direct sums of copies of C
  for (const ModulePtr& M :
       {C, direct_sum(C, C).module, tensor_module(free_module(c.ring, 2), C).module}) {
    CHECK(evaluation_map(C, M).is_bijective());
  }
}

TEST_CASE("direct sum and annihilator") {
  Corpus c = sq5();
  ModulePtr C = c.module("omega");
  ModulePtr k = c.module("k");
  ModulePtr R = c.module("R");

  DirectSum s = direct_sum(C, k);
  CHECK(s.module->dim() == C->dim() + k->dim());
  CHECK(ModuleHom::compose(s.proj_left, s.incl_left).matrix().is_identity());
  CHECK(ModuleHom::compose(s.proj_right, s.incl_right).matrix().is_identity());

  CHECK(annihilator(R).cols() == 0);
  Matrix ann_k = annihilator(k);
  CHECK(ann_k.cols() == 2);  // Ann(k) = m
  CHECK(ideal_contained_in(c.ring, ann_k, c.ring->maximal_ideal_basis()));
  CHECK(annihilator(C).cols() == 0);  // omega is faithful
  CHECK(annihilator(zero_module(c.ring)).cols() == 3);
}

TEST_CASE("tensor symmetry with an explicit swap") {
  Corpus c = sq5();
  for (const auto& [nm, M] : c.modules) {
    for (const auto& [nn, N] : c.modules) {
      TensorModule mn = tensor_module(M, N);
      TensorModule nm_t = tensor_module(N, M);
      CHECK(mn.module->dim() == nm_t.module->dim());
      // swap on the ambient square descends to an isomorphism
      const std::size_t mdim = M->dim(), ndim = N->dim();
      Matrix swap(c.ring->field(), ndim * mdim, mdim * ndim);
      for (std::size_t a = 0; a < mdim; ++a)
        for (std::size_t b = 0; b < ndim; ++b) swap.set_int(b * mdim + a, a * ndim + b, 1);
      Matrix induced = nm_t.projection * swap * mn.representatives;
      ModuleHom h(mn.module, nm_t.module, induced);
      h.validate();
      CHECK(h.is_bijective());
    }
  }
}

TEST_CASE("hom and tensor reject ring mismatch") {
  Corpus a = sq5();
  Corpus b = build_corpus("truncated_poly_2", Field::prime(5));
  CHECK_THROWS_AS(hom_module(a.module("R"), b.module("R")), RingMismatch);
  CHECK_THROWS_AS(tensor_module(a.module("k"), b.module("k")), RingMismatch);
}

TEST_CASE("module layer works over Q") {
  Corpus c = build_corpus("square_zero_2vars", Field::rationals());
  CHECK(tensor_module(c.module("omega"), c.module("omega")).module->dim() == 4);
  CHECK(hom_module(c.module("omega"), c.module("k")).module->dim() == 2);
  IsoResult iso = is_isomorphic(c.module("omega"), matlis_dual(c.module("R")));
  CHECK(iso.kind == IsoKind::yes);
}
