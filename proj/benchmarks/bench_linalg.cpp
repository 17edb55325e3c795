// Microbenchmarks for the exact kernels everything else reduces to, plus the
// resolution and relative-Tor pipelines at corpus scale.

#include <benchmark/benchmark.h>

#include <random>

#include "relhom/corpus.hpp"
#include "relhom/relative.hpp"

namespace {

using namespace relhom;

Matrix random_fp_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Field f = Field::prime(5);
  Matrix m(f, rows, cols);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(0, 4);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set_int(i, j, dist(rng));
  return m;
}

void BM_rref_f5(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Matrix m = random_fp_matrix(n, 2 * n, 42);
  for (auto _ : state) {
    auto r = rref(m);
    benchmark::DoNotOptimize(r.pivots.size());
  }
}
BENCHMARK(BM_rref_f5)->Arg(64)->Arg(128)->Arg(256);

void BM_kernel_basis_f5(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Matrix m = random_fp_matrix(n / 2, n, 7);
  for (auto _ : state) {
    Matrix k = kernel_basis(m);
    benchmark::DoNotOptimize(k.cols());
  }
}
BENCHMARK(BM_kernel_basis_f5)->Arg(128)->Arg(256)->Arg(512);

void BM_minimal_resolution_residue_field(benchmark::State& state) {
  Corpus corpus = build_corpus("square_zero_2vars", Field::prime(5));
  const std::size_t length = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    FreeResolution res = minimal_free_resolution(corpus.module("k"), length);
    benchmark::DoNotOptimize(res.betti.back());
  }
}
BENCHMARK(BM_minimal_resolution_residue_field)->Arg(6)->Arg(8);

void BM_reltor_cross_check(benchmark::State& state) {
  Corpus corpus = build_corpus("square_zero_2vars", Field::prime(5));
  const std::size_t degree = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    // fresh caches per iteration: this measures the full pipeline
    ResolutionCache cache;
    RelativeEngine engine(cache, corpus.module("omega"), degree);
    auto dims = engine.rel_tor_dims(RelTorFlavor::fc_m, corpus.module("k"),
                                    corpus.module("omega"), degree,
                                    RelTorStrategy::cross_check);
    benchmark::DoNotOptimize(dims.back());
  }
}
BENCHMARK(BM_reltor_cross_check)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_tensor_module(benchmark::State& state) {
  Corpus corpus = build_corpus("square_zero_2vars", Field::prime(5));
  ModulePtr omega = corpus.module("omega");
  ModulePtr big = free_module(corpus.ring, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    TensorModule t = tensor_module(omega, big);
    benchmark::DoNotOptimize(t.module->dim());
  }
}
BENCHMARK(BM_tensor_module)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
