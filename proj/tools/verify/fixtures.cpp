#include "fixtures.hpp"

#include <algorithm>

namespace contractlab::verify::fixtures {

std::vector<Graph> graph_battery(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, 9);
  std::uniform_real_distribution<double> density(0.1, 1.0);
  std::vector<Graph> out;
  for (std::size_t g = 0; g < count; ++g) {
    const std::size_t n = size(rng);
    out.push_back(Graph::random(n, density(rng), rng));
  }
  return out;
}

setfn::SetFunction<Rational> random_function(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> hundredths(0, 100);
  switch (kind(rng)) {
    case 0: {
      setfn::AdditiveFn<Rational> a;
      for (std::size_t i = 0; i < n; ++i) a.weights.push_back(ratio(hundredths(rng), 100 * static_cast<int>(n)));
      return setfn::SetFunction<Rational>(std::move(a));
    }
    case 1: {
      std::uniform_int_distribution<std::size_t> universe(1, 12);
      setfn::CoverageFn c{universe(rng), {}};
      std::bernoulli_distribution member(0.3);
      for (std::size_t i = 0; i < n; ++i) {
        ItemSet cover(c.universe_size);
        for (std::size_t u = 0; u < c.universe_size; ++u) {
          if (member(rng)) cover.insert(u);
        }
        c.covers.push_back(std::move(cover));
      }
      return setfn::SetFunction<Rational>(std::move(c));
    }
    case 2: {
      std::uniform_int_distribution<std::size_t> clauses(1, 4);
      setfn::XosFn<Rational> x;
      const std::size_t count = clauses(rng);
      for (std::size_t k = 0; k < count; ++k) {
        std::vector<Rational> clause;
        for (std::size_t i = 0; i < n; ++i) clause.push_back(ratio(hundredths(rng), 100 * static_cast<int>(n)));
        x.clauses.push_back(std::move(clause));
      }
      return setfn::SetFunction<Rational>(std::move(x));
    }
    default: {
      // Monotone table: running maximum of random values along subsets.
      std::vector<Rational> values(std::size_t{1} << n, Rational(0));
      for (std::size_t mask = 1; mask < values.size(); ++mask) {
        Rational v = ratio(hundredths(rng), 100);
        for (std::size_t i = 0; i < n; ++i) {
          if ((mask >> i) & 1U) v = std::max(v, values[mask & ~(std::size_t{1} << i)]);
        }
        values[mask] = v;
      }
      return setfn::SetFunction<Rational>(setfn::TableFn<Rational>{std::move(values)});
    }
  }
}

std::vector<Rational> random_costs(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> hundredths(0, 30);
  std::vector<Rational> costs;
  for (std::size_t i = 0; i < n; ++i) costs.push_back(ratio(hundredths(rng), 100));
  return costs;
}

multiaction::MultiActionInstance<Rational> random_multiaction(std::size_t n, std::mt19937_64& rng) {
  auto f = random_function(n, rng);
  return multiaction::MultiActionInstance<Rational>(random_costs(n, rng), std::move(f));
}

multiagent::MultiAgentInstance<Rational> random_multiagent(std::size_t n, std::mt19937_64& rng) {
  auto f = random_function(n, rng);
  std::uniform_int_distribution<int> small(0, 10);
  std::vector<Rational> costs;
  for (std::size_t i = 0; i < n; ++i) costs.push_back(ratio(small(rng), 1000));
  return multiagent::MultiAgentInstance<Rational>(std::move(costs), std::move(f));
}

}  // namespace contractlab::verify::fixtures
