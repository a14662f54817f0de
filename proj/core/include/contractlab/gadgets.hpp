#pragma once

// Instance families: hidden good set, clique XOS gadget, planted cover and
// the two submodular gadgets built on it, random pseudo-symmetric specs.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "contractlab/graph.hpp"
#include "contractlab/item_set.hpp"
#include "contractlab/multiaction.hpp"
#include "contractlab/multiagent.hpp"
#include "contractlab/numeric.hpp"
#include "contractlab/setfn.hpp"

namespace contractlab::gadgets {

using multiaction::MultiActionInstance;
using multiagent::MultiAgentInstance;

// m with m^3 = n; InvalidArgument otherwise.
std::size_t cube_root_exact(std::size_t n);

// f_G with uniform costs 1/(2mn).
template <Scalar T>
MultiAgentInstance<T> hidden_set_instance(std::size_t n, const ItemSet& good);
// G drawn uniformly among the m-subsets.
template <Scalar T>
MultiAgentInstance<T> hidden_set_instance(std::size_t n, std::uint64_t seed);
ItemSet random_good_set(std::size_t n, std::mt19937_64& rng);

// |S| <= m^1.5 and |S & G| > sqrt(m), decided on integers.
bool is_successful_query(std::size_t n, const ItemSet& good, const ItemSet& s);

struct CliqueXosGadget {
  MultiActionInstance<Rational> instance;
  Graph augmented;
  std::size_t delta = 0;
  Rational epsilon;
  Rational big_m;
  std::size_t original_vertices = 0;
  Rational scale{1};  // f(V') when normalized, else 1

  const setfn::CliqueGadgetFn& function() const;
};

// G' = G + fresh delta-clique, eps = 2/beta - 1, M = |V'| + eps, costs M.
// normalize divides f and the costs by f(V').
CliqueXosGadget clique_xos_instance(const Graph& g, std::size_t delta, const Rational& beta, bool normalize = false);

// sum over S & T of M + [T clique] + eps min(|T|, delta)/|T|, on the
// unnormalized gadget values. T must be non-empty.
Rational xos_clause_value(const setfn::CliqueGadgetFn& gadget, const ItemSet& t, const ItemSet& s);

struct PlantedCover {
  setfn::CoverageFn function;
  ItemSet planted;
};

// k blocks of copies + 1 elements. Items 0..k-1 cover one block each; the
// remaining k * copies items straddle two neighbouring blocks. Every item
// covers exactly |U|/k elements.
PlantedCover planted_cover_coverage(std::size_t k, std::size_t copies_per_block);

// Throws InvalidArgument unless every singleton of fprime is exactly 1/k.
void require_singletons(std::size_t k, const setfn::CoverageFn& fprime);

// (A, f', c_i = 1/(2k^2)).
MultiAgentInstance<Rational> multiagent_submodular_gadget(std::size_t k, const setfn::CoverageFn& fprime);

// A = {0} + A' where action 0 is the special action and action i + 1 is item i
// of fprime; f(S) = (f'(S & A') + [0 in S]) / 2 realised on U' x {0, 1}.
// Costs (1 - beta^2)/(2k) on A' and (1 - beta^3)/2 on action 0; beta in (0, 1/12).
MultiActionInstance<Rational> multiaction_submodular_gadget(std::size_t k, const setfn::CoverageFn& fprime,
                                                            const Rational& beta);

struct RandomPseudoSymmetric {
  multiagent::PseudoSymmetricSpec<Rational> spec;
  std::vector<Rational> costs;
};

// Concave profile with h(0) = 0, special set and bonus within the submodular
// range (bonus forced to 0 when symmetric), random costs.
RandomPseudoSymmetric random_pseudo_symmetric(std::size_t n, bool symmetric, std::mt19937_64& rng);

// Largest f over sets of each size s <= max_size, against 1 - e^{-s/k'} + eps.
struct SoundnessRow {
  std::size_t size = 0;
  double best_value = 0;
  double bound = 0;
  bool within = true;
};
std::vector<SoundnessRow> coverage_soundness_scan(const setfn::CoverageFn& f, std::size_t k_prime,
                                                  std::size_t max_size, double eps);

}  // namespace contractlab::gadgets
