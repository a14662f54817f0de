#include <random>

#include <benchmark/benchmark.h>

#include "contractlab/multiaction.hpp"
#include "contractlab/multiagent.hpp"
#include "contractlab/setfn.hpp"

using namespace contractlab;

namespace {

Rational frac(std::int64_t p, std::int64_t q) { return Rational(BigInt(p), BigInt(q)); }

setfn::SetFunction<Rational> random_xos(std::size_t n, std::size_t clauses, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> w(0, 50);
  setfn::XosFn<Rational> x;
  for (std::size_t c = 0; c < clauses; ++c) {
    std::vector<Rational> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(frac(w(rng), 100 * static_cast<std::int64_t>(n)));
    x.clauses.push_back(std::move(a));
  }
  return setfn::SetFunction<Rational>(std::move(x));
}

setfn::SetFunction<double> random_coverage(std::size_t n, std::size_t universe, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution member(0.3);
  setfn::CoverageFn c{universe, {}};
  for (std::size_t i = 0; i < n; ++i) {
    ItemSet cover(universe);
    for (std::size_t u = 0; u < universe; ++u) {
      if (member(rng)) cover.insert(u);
    }
    c.covers.push_back(std::move(cover));
  }
  return setfn::SetFunction<double>(std::move(c));
}

std::vector<Rational> costs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> c(0, 30);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(frac(c(rng), 1000));
  return out;
}

}  // namespace

static void BM_DemandCoverage(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = random_coverage(n, 64, 1);
  const std::vector<double> prices(n, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(setfn::demand(f, std::span<const double>(prices)));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_DemandCoverage)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

static void BM_CheckClasses(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = random_coverage(n, 32, 2);
  for (auto _ : state) benchmark::DoNotOptimize(setfn::check_classes(f));
}
BENCHMARK(BM_CheckClasses)->DenseRange(8, 14, 3)->Unit(benchmark::kMillisecond);

static void BM_MultiAgentSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const multiagent::MultiAgentInstance<Rational> inst(costs(n, 3), random_xos(n, 3, 4));
  for (auto _ : state) benchmark::DoNotOptimize(multiagent::solve_exact(inst));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_MultiAgentSolve)->DenseRange(8, 14, 3)->Unit(benchmark::kMillisecond);

static void BM_MultiActionEnvelope(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const multiaction::MultiActionInstance<Rational> inst(costs(n, 5), random_xos(n, 3, 6));
  for (auto _ : state) benchmark::DoNotOptimize(multiaction::solve_exact(inst));
}
BENCHMARK(BM_MultiActionEnvelope)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);

static void BM_MultiActionPairwise(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const multiaction::MultiActionInstance<Rational> inst(costs(n, 5), random_xos(n, 3, 6));
  for (auto _ : state) benchmark::DoNotOptimize(multiaction::solve_over_breakpoints(inst));
}
BENCHMARK(BM_MultiActionPairwise)->DenseRange(6, 9, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
