#pragma once

// Clique-size distinguishing and approximation through any contract solver.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "contractlab/caps.hpp"
#include "contractlab/gadgets.hpp"
#include "contractlab/graph.hpp"
#include "contractlab/numeric.hpp"

namespace contractlab::cliquereduce {

using multiaction::MultiActionInstance;

// A contract algorithm claiming u_P(alpha) >= beta u_P(alpha*).
struct ContractOracle {
  std::string name;
  Rational beta;
  std::function<Rational(const MultiActionInstance<Rational>&)> solve;
};

// The exact solver; a beta-approximation for every beta, declared with beta = 1.
ContractOracle exact_oracle();

// Returns whichever of M/(M+1+eps) and M/(M+1) is worse for the principal
// while still meeting beta times the optimum; the exact optimum otherwise.
// Only meaningful on clique gadget instances.
ContractOracle degraded_oracle(const Rational& beta);

enum class CliqueVerdict { small, large };
std::string to_string(CliqueVerdict v);

// SMALL iff alpha < M/(M+1), compared exactly.
CliqueVerdict classify(const Rational& alpha, const Rational& big_m);

struct DistinguishResult {
  CliqueVerdict verdict;
  Rational alpha;
  Rational threshold;
  std::size_t delta = 0;
};

// Throws InvalidArgument when the oracle's declared beta is below beta or its
// alpha leaves [0, 1].
DistinguishResult distinguish(const Graph& g, std::size_t delta, const Rational& beta, const ContractOracle& oracle);

struct ApproxResult {
  std::size_t estimate = 0;
  std::vector<DistinguishResult> rounds;  // delta = 1, 2, 4, ...
};

ApproxResult approx_clique(const Graph& g, const Rational& beta, const ContractOracle& oracle);

// Branch and bound, |V| <= caps.enumerate.
std::size_t max_clique_bruteforce(const Graph& g, const Caps& caps = {});

}  // namespace contractlab::cliquereduce
