#pragma once

// Multi-agent linear contracts: one payment share per agent, the principal
// picks the set S of agents to incentivize.

#include <cstddef>
#include <optional>
#include <vector>

#include "contractlab/caps.hpp"
#include "contractlab/item_set.hpp"
#include "contractlab/numeric.hpp"
#include "contractlab/setfn.hpp"

namespace contractlab::multiagent {

using setfn::SetFunction;

template <Scalar T>
struct MultiAgentInstance {
  std::vector<T> costs;
  SetFunction<T> f;

  MultiAgentInstance(std::vector<T> c, SetFunction<T> fn);
  std::size_t size() const { return costs.size(); }
};

template <Scalar T>
struct MultiAgentSolution {
  ItemSet set;
  std::vector<Extended<T>> payments;
  Extended<T> objective;
};

// alpha_i = c_i / f(i | S - i) for i in S, 0 outside S. 0/0 is 0, c/0 is +inf.
template <Scalar T>
std::vector<Extended<T>> equilibrium_payments(const MultiAgentInstance<T>& inst, const ItemSet& s);

// g(S) = (1 - sum alpha_i) f(S); -inf when some payment is infinite and f(S) > 0.
template <Scalar T>
Extended<T> objective_g(const MultiAgentInstance<T>& inst, const ItemSet& s);

template <Scalar T>
bool verify_equilibrium(const MultiAgentInstance<T>& inst, std::span<const T> payments, const ItemSet& s);

// Exhaustive argmax of g. With size_cap only sets of size <= size_cap are
// scanned, and the cap then bounds C(n, <= size_cap) instead of 2^n.
template <Scalar T>
MultiAgentSolution<T> solve_exact(const MultiAgentInstance<T>& inst, std::optional<std::size_t> size_cap = {},
                                  const Caps& caps = {});

// f(S) = h(|S|) + bonus * [S == special_set].
template <Scalar T>
struct PseudoSymmetricSpec {
  std::vector<T> profile;
  ItemSet special_set;
  T bonus{0};
};

// Tabulates the spec and checks it exhaustively (n <= 16): profile of length
// n + 1, non-decreasing, bonus >= 0, and the result submodular.
template <Scalar T>
SetFunction<T> pseudo_symmetric_function(const PseudoSymmetricSpec<T>& spec);

// {empty} + prefixes [i] + all sets of size <= floor(2/eps), over items already
// sorted by cost; deduplicated, ordered by mask.
std::vector<ItemSet> ptas_candidate_family(std::size_t n, double eps);

// Sorts agents by cost (stable), searches the candidate family and maps the
// answer back to the caller's indices.
template <Scalar T>
MultiAgentSolution<T> solve_ptas_pseudosymmetric(const PseudoSymmetricSpec<T>& spec, const std::vector<T>& costs,
                                                 double eps);

}  // namespace contractlab::multiagent
