#include <doctest.h>

#include <thread>

#include "relhom/corpus.hpp"
#include "relhom/homalg.hpp"

using namespace relhom;

namespace {

Corpus sq5() { return build_corpus("square_zero_2vars", Field::prime(5)); }

}  // namespace

TEST_CASE("resolution of a free module stops immediately") {
  Corpus c = sq5();
  FreeResolution res = minimal_free_resolution(c.module("R"), 4);
  CHECK(res.betti == std::vector<std::size_t>{1, 0, 0, 0, 0});
  res.validate();
}

TEST_CASE("betti numbers over the square-zero ring double and triple") {
  Corpus c = sq5();
  ResolutionCache cache;
  auto bk = betti_numbers(cache, c.module("k"), 6);
  CHECK(bk == std::vector<std::size_t>{1, 2, 4, 8, 16, 32, 64});

  auto bo = betti_numbers(cache, c.module("omega"), 6);
  CHECK(bo == std::vector<std::size_t>{2, 3, 6, 12, 24, 48, 96});

  auto boo = betti_numbers(cache, c.module("omega_tensor_omega"), 6);
  CHECK(boo == std::vector<std::size_t>{4, 8, 16, 32, 64, 128, 256});

  cache.get(c.module("k"), 6)->validate();
  cache.get(c.module("omega"), 6)->validate();
}

TEST_CASE("betti numbers equal Tor dimensions against k") {
  Corpus c = sq5();
  ResolutionCache cache;
  ModulePtr k = c.module("k");
  for (const auto& [name, M] : c.modules) {
    CAPTURE(name);
    auto betti = betti_numbers(cache, M, 5);
    auto tors = tor_dims(cache, M, k, 5);
    CHECK(betti == tors);
  }
}

TEST_CASE("tor basics") {
  Corpus c = sq5();
  ResolutionCache cache;
  ModulePtr C = c.module("omega");
  ModulePtr k = c.module("k");
  ModulePtr R = c.module("R");

  // Tor_0(M, N) = M (x) N
  for (const auto& [nм, M] : c.modules)
    for (const auto& [nn, N] : c.modules)
      CHECK(tor_dims(cache, M, N, 0)[0] == tensor_module(M, N).module->dim());

  // Tor_i(free, N) = 0 for i >= 1
  for (std::size_t i = 1; i <= 3; ++i) {
    CHECK(tor_dims(cache, R, C, i)[i] == 0);
    CHECK(ext_dims(cache, R, C, i)[i] == 0);
  }

  // Tor_i(k, omega (x) omega) has dimension 2^{i+2}
  auto t = tor_dims(cache, k, c.module("omega_tensor_omega"), 6);
  for (std::size_t i = 0; i <= 6; ++i) CHECK(t[i] == (std::size_t(1) << (i + 2)));

  // symmetry in dimension, computed both ways
  for (const auto& [nm, M] : c.modules)
    for (const auto& [nn, N] : c.modules) {
      auto a = tor_dims(cache, M, N, 4);
      auto b = tor_dims(cache, N, M, 4);
      CHECK(a == b);
    }
}

TEST_CASE("tor modules carry verified actions") {
  Corpus c = sq5();
  ResolutionCache cache;
  ModulePtr t1 = tor(cache, c.module("k"), c.module("omega"), 2);
  CHECK(t1->dim() == 6);  // beta_2(omega) since Tor(k, C) = Tor(C, k)
  CHECK_NOTHROW(t1->validate());

  ModulePtr e0 = ext(cache, c.module("R"), c.module("omega"), 0);
  CHECK(e0->dim() == 3);  // Ext^0(R, N) = N
}

TEST_CASE("ext of the residue field matches betti numbers too") {
  Corpus c = sq5();
  ResolutionCache cache;
  ModulePtr k = c.module("k");
  // over this ring Ext^i(M, k) also has dimension beta_i(M)
  for (const auto& [name, M] : c.modules) {
    auto betti = betti_numbers(cache, M, 4);
    auto exts = ext_dims(cache, M, k, 4);
    CHECK(betti == exts);
  }
}

TEST_CASE("chain complex homology and exactness") {
  Corpus c = sq5();
  ModulePtr k = c.module("k");

  // exact complex 0 -> k -> k -> 0 via the identity
  ChainComplex ident(0, {k, k}, {ModuleHom::identity(k)});
  CHECK(ident.homology(0)->is_zero());
  CHECK(ident.homology(1)->is_zero());

  // zero differentials: homology = the modules themselves
  ModulePtr C = c.module("omega");
  ChainComplex zero(0, {C, C}, {ModuleHom::zero(C, C)});
  CHECK(zero.homology(0)->dim() == C->dim());
  CHECK(zero.homology(1)->dim() == C->dim());

  CHECK_THROWS_AS(ident.module_at(5), IndexOutOfRange);
  CHECK_THROWS_AS(ident.differential_at(0), IndexOutOfRange);
}

TEST_CASE("augmented minimal resolution is exact in interior degrees") {
  Corpus c = sq5();
  ResolutionCache cache;
  auto res = cache.get(c.module("k"), 4);
  // assemble the augmented complex ... -> F_1 -> F_0 -> k -> 0 as a ChainComplex
  std::vector<ModulePtr> mods{c.module("k")};
  std::vector<ModuleHom> maps;
  std::vector<ModulePtr> frees;
  for (std::size_t j = 0; j <= 4; ++j) frees.push_back(free_module(c.ring, res->betti[j]));
  maps.push_back(ModuleHom(frees[0], c.module("k"), res->augmentation.matrix(), false));
  for (std::size_t j = 1; j <= 4; ++j) {
    mods.push_back(frees[j - 1]);
    maps.push_back(ModuleHom(frees[j], frees[j - 1], res->free_map(j), false));
  }
  mods.push_back(frees[4]);
  ChainComplex aug(-1, std::move(mods), std::move(maps));
  // exact at the target spot (augmentation onto) and at every interior degree
  for (int j = -1; j <= 3; ++j) CHECK(aug.homology(j)->is_zero());
}

TEST_CASE("alternating dimension sum of an exact complex is zero") {
  Corpus c = sq5();
  ResolutionCache cache;
  ChainComplex les = horseshoe_les(cache, c.sequences.at("m_in_R"), c.module("k"), 4);
  long alt = 0;
  for (int j = les.lo(); j <= les.hi(); ++j)
    alt += (j % 2 == 0 ? 1 : -1) * static_cast<long>(les.module_at(j)->dim());
  CHECK(alt == 0);
}

TEST_CASE("horseshoe LES for a split sequence has zero connecting maps") {
  Corpus c = sq5();
  ResolutionCache cache;
  const ShortExactSequence& split = c.sequences.at("split_omega_k");
  ChainComplex les = horseshoe_les(cache, split, c.module("k"), 3);
  CHECK(les.is_exact().exact);
  // connecting maps sit at spots 3i+1 -> 3i (complex indexing): delta_i maps
  // Tor_i(quot) at 3i+1 to Tor_{i-1}(sub) at 3i
  for (std::size_t i = 1; i <= 3; ++i) {
    const ModuleHom& delta = les.differential_at(static_cast<int>(3 * i + 1));
    CHECK(delta.matrix().is_zero());
  }
}

TEST_CASE("horseshoe LES over m_in_R is exact and matches tor at each spot") {
  Corpus c = sq5();
  ResolutionCache cache;
  const ShortExactSequence& ses = c.sequences.at("m_in_R");
  ModulePtr N = c.module("k");
  ChainComplex les = horseshoe_les(cache, ses, N, 4);
  CHECK(les.is_exact().exact);
  for (std::size_t i = 0; i <= 4; ++i) {
    CHECK(les.module_at(static_cast<int>(3 * i + 1))->dim() == tor_dims(cache, ses.quot(), N, i)[i]);
    CHECK(les.module_at(static_cast<int>(3 * i + 2))->dim() == tor_dims(cache, ses.mid(), N, i)[i]);
    CHECK(les.module_at(static_cast<int>(3 * i + 3))->dim() == tor_dims(cache, ses.sub(), N, i)[i]);
  }
}

TEST_CASE("horseshoe rejects a non-exact input") {
  Corpus c = sq5();
  ResolutionCache cache;
  ModulePtr k = c.module("k");
  ModulePtr R = c.module("R");
  // 0 -> k -> R+k -> k -> 0 with the identity on both sides is not exact
  DirectSum s = direct_sum(R, k);
  ShortExactSequence bogus{s.incl_right, s.proj_right};
  CHECK_THROWS_AS(horseshoe_les(cache, bogus, k, 2), NotExactError);
}

TEST_CASE("resolution cache extends previously computed resolutions") {
  Corpus c = sq5();
  ResolutionCache cache;
  auto r3 = cache.get(c.module("k"), 3);
  auto r6 = cache.get(c.module("k"), 6);
  CHECK(r6->betti.size() == 7);
  for (std::size_t i = 0; i <= 3; ++i) CHECK(r3->betti[i] == r6->betti[i]);
  auto again = cache.get(c.module("k"), 4);
  CHECK(again->length() >= 4);
}

TEST_CASE("gorenstein control: k over truncated_poly_3 has periodic resolution") {
  Corpus g = build_corpus("truncated_poly_3", Field::prime(5));
  ResolutionCache cache;
  auto bk = betti_numbers(cache, g.module("k"), 6);
  CHECK(bk == std::vector<std::size_t>{1, 1, 1, 1, 1, 1, 1});
  auto bm = betti_numbers(cache, g.module("m"), 4);
  CHECK(bm == std::vector<std::size_t>{1, 1, 1, 1, 1});
}

TEST_CASE("resolution cache and tor are safe to share across threads") {
  Corpus c = sq5();
  ResolutionCache cache;
  ModulePtr k = c.module("k");
  ModulePtr omega = c.module("omega");
  auto expected_k = tor_dims(cache, k, omega, 5);
  auto expected_o = tor_dims(cache, omega, k, 5);

  ResolutionCache shared;
  std::vector<std::thread> workers;
  std::vector<std::vector<std::size_t>> results(8);
  for (int t = 0; t < 8; ++t) {
    workers.emplace_back([&, t] {
      results[static_cast<std::size_t>(t)] =
          t % 2 == 0 ? tor_dims(shared, k, omega, 5) : tor_dims(shared, omega, k, 5);
    });
  }
  for (auto& w : workers) w.join();
  for (int t = 0; t < 8; ++t)
    CHECK(results[static_cast<std::size_t>(t)] == (t % 2 == 0 ? expected_k : expected_o));
}
