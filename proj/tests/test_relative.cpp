#include <doctest.h>

#include "relhom/corpus.hpp"
#include "relhom/relative.hpp"

using namespace relhom;

namespace {

struct Setup {
  Corpus corpus;
  ResolutionCache cache;
  RelativeEngine engine;

  explicit Setup(const std::string& preset = "square_zero_2vars",
                 const Field& f = Field::prime(5), std::size_t bound = 6)
      : corpus(build_corpus(preset, f)), engine(cache, corpus.module("omega"), bound) {}
};

}  // namespace

TEST_CASE("engine refuses a non-semidualizing module") {
  Corpus c = build_corpus("square_zero_2vars", Field::prime(5));
  ResolutionCache cache;
  CHECK_THROWS_AS(RelativeEngine(cache, c.module("k"), 4), std::invalid_argument);
}

TEST_CASE("proper resolution of C itself is concentrated in degree 0") {
  Setup s;
  ModulePtr C = s.corpus.module("omega");
  ProperResolution pr = s.engine.proper_pc_resolution(C, 3);
  CHECK(pr.underlying_betti == std::vector<std::size_t>{1, 0, 0, 0});
  CHECK(pr.complex.module_at(0)->dim() == C->dim());
  CHECK(pr.augmentation.is_bijective());
}

TEST_CASE("proper resolution of k has omega-power terms of doubling rank") {
  Setup s;
  ProperResolution pr = s.engine.proper_pc_resolution(s.corpus.module("k"), 3);
  // Hom(omega, k) = k^2, so the underlying betti numbers double from 2
  CHECK(pr.underlying_betti == std::vector<std::size_t>{2, 4, 8, 16});
  for (int j = 0; j <= 3; ++j)
    CHECK(pr.complex.module_at(j)->dim() == 3 * pr.underlying_betti[static_cast<std::size_t>(j)]);
  CHECK(pr.augmentation.is_surjective());
}

TEST_CASE("proper resolutions pass the properness criterion") {
  Setup s;
  for (const char* name : {"k", "R", "m"}) {
    CAPTURE(name);
    ModulePtr M = s.corpus.module(name);
    ProperResolution pr = s.engine.proper_pc_resolution(M, 3);
    // assemble the augmented complex with the target at index -1
    std::vector<ModulePtr> mods{M};
    std::vector<ModuleHom> maps{pr.augmentation};
    for (int j = 0; j <= 3; ++j) {
      mods.push_back(pr.complex.module_at(j));
      if (j >= 1) maps.push_back(pr.complex.differential_at(j));
    }
    ChainComplex augmented(-1, std::move(mods), std::move(maps));
    PropernessReport rep = s.engine.is_proper(augmented);
    CHECK(rep.proper);
  }
}

TEST_CASE("a complex with homology fails the properness check") {
  Setup s;
  ModulePtr C = s.corpus.module("omega");
  DirectSum cc = direct_sum(C, C);
  // 0 -> C -> C + C with zero maps has nonzero homology everywhere
  std::vector<ModulePtr> mods{zero_module(s.corpus.ring), C, cc.module};
  std::vector<ModuleHom> maps{ModuleHom::zero(C, mods[0]), ModuleHom::zero(cc.module, C)};
  ChainComplex bad(-1, std::move(mods), std::move(maps));
  PropernessReport rep = s.engine.is_proper(bad);
  CHECK_FALSE(rep.proper);
}

TEST_CASE("rel tor dimension table from the worked example") {
  Setup s;
  ModulePtr k = s.corpus.module("k");
  ModulePtr C = s.corpus.module("omega");
  const auto cross = RelTorStrategy::cross_check;

  // first slot resolved, (k, C): 8 at degree 0, 2^{i+3} afterwards
  auto fc_kC = s.engine.rel_tor_dims(RelTorFlavor::fc_m, k, C, 6, cross);
  CHECK(fc_kC[0] == 8);
  for (std::size_t i = 1; i <= 6; ++i) CHECK(fc_kC[i] == (std::size_t(1) << (i + 3)));

  // second slot resolved, (k, C): k (x) C in degree 0, zero afterwards
  auto mfc_kC = s.engine.rel_tor_dims(RelTorFlavor::m_fc, k, C, 6, cross);
  CHECK(mfc_kC[0] == 2);
  for (std::size_t i = 1; i <= 6; ++i) CHECK(mfc_kC[i] == 0);

  // (C, k) with the first slot resolved vanishes in positive degrees
  auto fc_Ck = s.engine.rel_tor_dims(RelTorFlavor::fc_m, C, k, 6, cross);
  CHECK(fc_Ck[0] == 2);
  for (std::size_t i = 1; i <= 6; ++i) CHECK(fc_Ck[i] == 0);

  // (k, k): beta_0(C)^2 * beta_i(k) = 4 * 2^i
  auto fc_kk = s.engine.rel_tor_dims(RelTorFlavor::fc_m, k, k, 6, cross);
  for (std::size_t i = 0; i <= 6; ++i) CHECK(fc_kk[i] == 4 * (std::size_t(1) << i));

  // pc and fc flavors agree (served by the same engine over artinian rings)
  CHECK(s.engine.rel_tor_dims(RelTorFlavor::pc_m, k, C, 4, cross) ==
        s.engine.rel_tor_dims(RelTorFlavor::fc_m, k, C, 4, cross));
}

TEST_CASE("flavor symmetry: resolving the other slot swaps arguments") {
  Setup s;
  for (const auto& [nm, M] : s.corpus.modules)
    for (const auto& [nn, N] : s.corpus.modules) {
      auto a = s.engine.rel_tor_dims(RelTorFlavor::pc_m, M, N, 3, RelTorStrategy::formula);
      auto b = s.engine.rel_tor_dims(RelTorFlavor::m_pc, N, M, 3, RelTorStrategy::formula);
      CHECK(a == b);
    }
}

TEST_CASE("rel tor modules materialize with verified actions") {
  Setup s;
  ModulePtr k = s.corpus.module("k");
  ModulePtr C = s.corpus.module("omega");
  for (RelTorStrategy strat :
       {RelTorStrategy::direct, RelTorStrategy::formula, RelTorStrategy::cross_check}) {
    ModulePtr t = s.engine.rel_tor({RelTorFlavor::fc_m, C, k, C, 2}, strat);
    CHECK(t->dim() == 32);  // 2^{2+3}
    CHECK_NOTHROW(t->validate());
  }
}

TEST_CASE("collapse for C = R: all flavors equal absolute Tor") {
  Corpus c = build_corpus("square_zero_2vars", Field::prime(5));
  ResolutionCache cache;
  RelativeEngine engine_R(cache, c.module("R"), 4);
  for (const auto& [nm, M] : c.modules)
    for (const auto& [nn, N] : c.modules) {
      auto abs = tor_dims(cache, M, N, 3);
      for (RelTorFlavor fl :
           {RelTorFlavor::pc_m, RelTorFlavor::fc_m, RelTorFlavor::m_pc, RelTorFlavor::m_fc}) {
        auto rel = engine_R.rel_tor_dims(fl, M, N, 3, RelTorStrategy::cross_check);
        CHECK(rel == abs);
      }
    }
}

TEST_CASE("balance defect table flags the square-zero example and clears Gorenstein") {
  Setup s;
  ModulePtr k = s.corpus.module("k");
  ModulePtr C = s.corpus.module("omega");
  BalanceTable t = balance_defect(s.engine, s.engine, k, C, {0, 1, 2});
  CHECK(t.dims[0][2] == 8);
  CHECK(t.dims[0][1] == 2);
  CHECK(t.flagged[0]);
  CHECK(t.any_flagged());

  Setup g("truncated_poly_3");
  BalanceTable tg = balance_defect(g.engine, g.engine, g.corpus.module("k"),
                                   g.corpus.module("omega"), {0, 1, 2});
  CHECK_FALSE(tg.any_flagged());

  // with B = C = R every column equals absolute Tor
  ResolutionCache rc;
  RelativeEngine engine_R(rc, s.corpus.module("R"), 4);
  BalanceTable tr = balance_defect(engine_R, engine_R, k, C, {0, 1, 2});
  CHECK_FALSE(tr.any_flagged());
}

TEST_CASE("relative ext dimensions and duality with Tor") {
  Setup s;
  ModulePtr C = s.corpus.module("omega");
  ModulePtr k = s.corpus.module("k");
  ModulePtr R = s.corpus.module("R");

  // ExtPC^0(C, C) = Hom(C, C) = R has dimension 3; higher ones vanish
  auto e = s.engine.rel_ext_pc_dims(C, C, 3);
  CHECK(e[0] == 3);
  CHECK(e[1] == 0);
  CHECK(e[2] == 0);

  // duality: dim ExtPC^i(M, dual N) = dim Tor^{PC-M}_i(M, N)
  for (const auto& [nm, M] : s.corpus.modules)
    for (const auto& [nn, N] : s.corpus.modules) {
      auto ed = s.engine.rel_ext_pc_dims(M, matlis_dual(N), 3, RelTorStrategy::cross_check);
      auto td = s.engine.rel_tor_dims(RelTorFlavor::pc_m, M, N, 3, RelTorStrategy::formula);
      CHECK(ed == td);
    }

  // M-I_C flavor through duality transport: agrees with Ext of the
  // C-tensored arguments (the transport route is cross-checked internally)
  ModulePtr mic = s.engine.rel_ext_mic(C, C, 0);
  CHECK(mic->dim() ==
        ext_dims(s.cache, tensor_module(C, C).module, tensor_module(C, C).module, 0)[0]);
  CHECK(s.engine.rel_ext_mic(R, k, 1)->dim() ==
        ext_dims(s.cache, tensor_module(C, R).module, tensor_module(C, k).module, 1)[1]);
}

TEST_CASE("fc and pc projective dimensions") {
  Setup s;
  ModulePtr C = s.corpus.module("omega");
  ModulePtr k = s.corpus.module("k");

  CHECK(s.engine.fc_pd(zero_module(s.corpus.ring), 4).kind ==
        HomologicalDim::Kind::minus_infinity);
  CHECK(s.engine.fc_pd(C, 4) == HomologicalDim::finite(0, 4));
  CHECK(s.engine.fc_pd(direct_sum(C, C).module, 4) == HomologicalDim::finite(0, 4));
  CHECK(s.engine.fc_pd(k, 4).kind == HomologicalDim::Kind::above_bound);

  for (const auto& [name, M] : s.corpus.modules) {
    CAPTURE(name);
    CHECK(s.engine.fc_pd(M, 4) == s.engine.pc_pd(M, 4));
  }
}

TEST_CASE("vanishing characterization agrees three ways") {
  Setup s;
  ModulePtr C = s.corpus.module("omega");
  ModulePtr k = s.corpus.module("k");

  VanishingReport a = s.engine.vanishing_characterization(C, 0, 4);
  CHECK(a.agree());
  CHECK(a.tor_vanishes);

  VanishingReport b = s.engine.vanishing_characterization(k, 0, 4);
  CHECK(b.agree());
  CHECK_FALSE(b.tor_vanishes);

  VanishingReport cc = s.engine.vanishing_characterization(direct_sum(C, C).module, 0, 4);
  CHECK(cc.agree());
  CHECK(cc.tor_vanishes);
}

TEST_CASE("relative LES: split sequences always qualify and come out exact") {
  Setup s;
  const ShortExactSequence& split = s.corpus.sequences.at("split_omega_k");
  for (LesVariable var : {LesVariable::first, LesVariable::second}) {
    ChainComplex les = s.engine.rel_tor_les(split, s.corpus.module("k"), 3, var);
    CHECK(les.is_exact().exact);
  }
}

TEST_CASE("relative LES preconditions are runtime-checked") {
  Setup s;
  const ShortExactSequence& ses = s.corpus.sequences.at("m_in_R");
  // Hom(C, 0 -> m -> R -> k -> 0) is not exact over the square-zero ring:
  // every hom omega -> R lands inside m
  CHECK_THROWS_AS(s.engine.rel_tor_les(ses, s.corpus.module("k"), 2, LesVariable::first),
                  NotHomCExact);
}

TEST_CASE("the paper sequence 0 -> R/xR -> omega -> k -> 0 drives a second-variable LES") {
  Setup s;
  const ShortExactSequence& ses = s.corpus.sequences.at("cyclic_in_omega");
  ModulePtr N = s.corpus.module("k");
  bool first_ok = true, second_ok = true;
  try {
    ChainComplex les = s.engine.rel_tor_les(ses, N, 3, LesVariable::first);
    CHECK(les.is_exact().exact);
  } catch (const NotHomCExact&) {
    first_ok = false;
  }
  try {
    ChainComplex les = s.engine.rel_tor_les(ses, N, 3, LesVariable::second);
    CHECK(les.is_exact().exact);
  } catch (const NotTensorCExact&) {
    second_ok = false;
  }
  // at least one transport applies to the example sequence
  CHECK((first_ok || second_ok));
}

TEST_CASE("annihilator containment for relative tor") {
  Setup s;
  ModulePtr C = s.corpus.module("omega");
  for (const auto& [nm, M] : s.corpus.modules)
    for (const auto& [nn, N] : s.corpus.modules) {
      ModulePtr T = s.engine.rel_tor({RelTorFlavor::pc_m, C, M, N, 1}, RelTorStrategy::formula);
      Matrix annT = annihilator(T);
      CHECK(ideal_contained_in(s.corpus.ring, annihilator(M), annT));
      CHECK(ideal_contained_in(s.corpus.ring, annihilator(N), annT));
    }
}

TEST_CASE("positive balance cases: modules in both classes") {
  Setup s;
  ModulePtr C = s.corpus.module("omega");
  ModulePtr R = s.corpus.module("R");
  // M = C in B_C and N = R in A_C: relative equals absolute
  auto rel = s.engine.rel_tor_dims(RelTorFlavor::fc_m, C, R, 4, RelTorStrategy::cross_check);
  auto abs = tor_dims(s.cache, C, R, 4);
  CHECK(rel == abs);
  // evaluation bijective for C: degree-0 relative Tor is the plain tensor
  for (const auto& [nn, N] : s.corpus.modules) {
    auto d = s.engine.rel_tor_dims(RelTorFlavor::fc_m, C, N, 0, RelTorStrategy::formula);
    CHECK(d[0] == tensor_module(C, N).module->dim());
  }
  // balance holds whenever both modules certify into the class intersection
  // (over the square-zero preset only degenerate modules do; the Gorenstein
  // control makes the check bite on its full corpus)
  for (const char* preset : {"square_zero_2vars", "truncated_poly_3"}) {
    Setup t(preset);
    ModulePtr Ct = t.corpus.module("omega");
    std::vector<ModulePtr> candidates = {t.corpus.module("R"),
                                         free_module(t.corpus.ring, 2), Ct,
                                         direct_sum(Ct, Ct).module, t.corpus.module("k")};
    for (const ModulePtr& M : candidates)
      for (const ModulePtr& N : candidates) {
        bool both_in = in_auslander_class(t.cache, Ct, M, 3).admitted() &&
                       in_bass_class(t.cache, Ct, M, 3).admitted() &&
                       in_auslander_class(t.cache, Ct, N, 3).admitted() &&
                       in_bass_class(t.cache, Ct, N, 3).admitted();
        if (!both_in) continue;
        auto a = t.engine.rel_tor_dims(RelTorFlavor::fc_m, M, N, 3, RelTorStrategy::formula);
        auto b = t.engine.rel_tor_dims(RelTorFlavor::m_fc, M, N, 3, RelTorStrategy::formula);
        CHECK(a == b);
        auto c2 = t.engine.rel_tor_dims(RelTorFlavor::fc_m, N, M, 3, RelTorStrategy::formula);
        CHECK(a == c2);
      }
  }
}

TEST_CASE("C (x) C free detects triviality") {
  // over square-zero, C(x)C = k^4 is not free; over Gorenstein C = R it is
  Setup s;
  ResolutionCache& cache = s.cache;
  CHECK(betti_numbers(cache, s.corpus.module("omega_tensor_omega"), 1)[1] != 0);

  Setup g("truncated_poly_2");
  CHECK(betti_numbers(g.cache, g.corpus.module("omega_tensor_omega"), 1)[1] == 0);
}

TEST_CASE("two-of-three for fc-pd along Hom(C,-)-exact sequences") {
  Setup s;
  const std::size_t b = 4;
  for (const auto& [name, ses] : s.corpus.sequences) {
    // only sequences that stay exact under Hom(C, -) support the argument
    try {
      s.engine.rel_tor_les(ses, s.corpus.module("k"), 1, LesVariable::first);
    } catch (const NotHomCExact&) {
      continue;
    }
    CAPTURE(name);
    HomologicalDim sub = s.engine.fc_pd(ses.sub(), b);
    HomologicalDim mid = s.engine.fc_pd(ses.mid(), b);
    HomologicalDim quot = s.engine.fc_pd(ses.quot(), b);
    CHECK(mid <= std::max(sub, quot));
    CHECK(sub <= std::max(mid, quot));  // quot - 1 <= quot, so this is the weaker safe form
    HomologicalDim quot_bound = std::max(mid, sub);
    if (quot_bound.kind == HomologicalDim::Kind::finite)
      quot_bound = HomologicalDim::finite(quot_bound.value + 1, b);
    CHECK(quot <= quot_bound);
  }
}

TEST_CASE("relative engine over Q agrees with F_5 dimensions") {
  Setup q("square_zero_2vars", Field::rationals(), 3);
  ModulePtr k = q.corpus.module("k");
  ModulePtr C = q.corpus.module("omega");
  auto dims = q.engine.rel_tor_dims(RelTorFlavor::fc_m, k, C, 3, RelTorStrategy::cross_check);
  CHECK(dims == std::vector<std::size_t>{8, 16, 32, 64});
}
