#include <random>

#include <benchmark/benchmark.h>

#include "contractlab/cliquereduce.hpp"
#include "contractlab/gadgets.hpp"
#include "contractlab/kprover.hpp"

using namespace contractlab;

static void BM_MaxClique(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const Graph g = Graph::random(static_cast<std::size_t>(state.range(0)), 0.5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(cliquereduce::max_clique_bruteforce(g));
}
BENCHMARK(BM_MaxClique)->DenseRange(8, 24, 8);

static void BM_ApproxClique(benchmark::State& state) {
  std::mt19937_64 rng(8);
  const Graph g = Graph::random(static_cast<std::size_t>(state.range(0)), 0.6, rng);
  const auto oracle = cliquereduce::exact_oracle();
  const Rational beta(BigInt(1), BigInt(2));
  for (auto _ : state) benchmark::DoNotOptimize(cliquereduce::approx_clique(g, beta, oracle));
}
BENCHMARK(BM_ApproxClique)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_KProverCoverage(benchmark::State& state) {
  const auto phi = kprover::toy_formula();
  const auto params = kprover::KProverParams::greedy(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(kprover::kprover_coverage(phi, params));
}
BENCHMARK(BM_KProverCoverage)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_HiddenSetQuery(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(9);
  const auto inst = gadgets::hidden_set_instance<double>(n, std::uint64_t{9});
  const ItemSet s = gadgets::random_good_set(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(inst.f.value(s));
}
BENCHMARK(BM_HiddenSetQuery)->Arg(512)->Arg(4096);

BENCHMARK_MAIN();
