#include <benchmark/benchmark.h>

#include <random>

#include "e2hom/linalg.hpp"

using namespace e2hom;

static IntMatrix random_square(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-9, 9);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; i++)
    for (std::size_t j = 0; j < n; j++) m.at(i, j) = d(rng);
  return m;
}

static void bm_smith_normal_form(benchmark::State& state) {
  IntMatrix m = random_square(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(bm_smith_normal_form)->Arg(8)->Arg(16)->Arg(32);

static void bm_sparse_rank_factors(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> v(-1, 1);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  SparseMat sm(n, n);
  for (std::size_t i = 0; i < n; i++)
    for (std::size_t j = 0; j < n; j++)
      if (keep(rng) < 0.05) sm.add(i, j, v(rng));
  for (auto _ : state) {
    SparseMat copy = sm;
    benchmark::DoNotOptimize(sparse_rank_factors(std::move(copy)));
  }
}
BENCHMARK(bm_sparse_rank_factors)->Arg(200)->Arg(800);

BENCHMARK_MAIN();
