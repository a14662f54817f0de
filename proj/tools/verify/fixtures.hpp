#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "contractlab/graph.hpp"
#include "contractlab/multiaction.hpp"
#include "contractlab/multiagent.hpp"
#include "contractlab/numeric.hpp"

namespace contractlab::verify::fixtures {

// 50 graphs on 1..9 vertices with edge density drawn from [0.1, 1].
std::vector<Graph> graph_battery(std::uint64_t seed, std::size_t count = 50);

// Random additive / coverage / XOS / table function on n items with small
// denominators (values are multiples of 1/100 or of 1/|U|).
setfn::SetFunction<Rational> random_function(std::size_t n, std::mt19937_64& rng);
std::vector<Rational> random_costs(std::size_t n, std::mt19937_64& rng);

multiaction::MultiActionInstance<Rational> random_multiaction(std::size_t n, std::mt19937_64& rng);
multiagent::MultiAgentInstance<Rational> random_multiagent(std::size_t n, std::mt19937_64& rng);

inline Rational ratio(std::int64_t p, std::int64_t q) { return Rational(BigInt(p), BigInt(q)); }

}  // namespace contractlab::verify::fixtures
