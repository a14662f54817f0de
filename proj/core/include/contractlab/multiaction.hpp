#pragma once

// Multi-action linear contracts: a single share alpha, the agent picks a set
// of actions S maximizing f(S) alpha - c(S).

#include <cstddef>
#include <vector>

#include "contractlab/caps.hpp"
#include "contractlab/item_set.hpp"
#include "contractlab/numeric.hpp"
#include "contractlab/setfn.hpp"

namespace contractlab::multiaction {

using setfn::SetFunction;

template <Scalar T>
struct MultiActionInstance {
  std::vector<T> costs;
  SetFunction<T> f;

  MultiActionInstance(std::vector<T> c, SetFunction<T> fn);
  std::size_t size() const { return costs.size(); }
};

template <Scalar T>
struct MultiActionSolution {
  T alpha;
  ItemSet best_response;
  T principal_utility;
};

// One (f(S), c(S)) pair, represented by its smallest mask.
template <Scalar T>
struct ActionPoint {
  T value;
  T cost;
  Word mask = 0;
};

// Every distinct (f, c) pair of an instance. Best responses only depend on
// these points, so repeated queries on one instance are cheap.
template <Scalar T>
class ActionProfile {
 public:
  explicit ActionProfile(const MultiActionInstance<T>& inst, const Caps& caps = {});

  std::size_t ground_size() const { return n_; }
  const std::vector<ActionPoint<T>>& points() const { return points_; }

  // Agent utility first, then larger f, then smaller mask.
  const ActionPoint<T>& best_response(const T& alpha) const;
  T principal_utility(const T& alpha) const;

 private:
  std::size_t n_;
  std::vector<ActionPoint<T>> points_;  // sorted by (value, cost)
};

// alpha must lie in [0, 1]; throws PreconditionError otherwise.
template <Scalar T>
ItemSet agent_best_response(const MultiActionInstance<T>& inst, const T& alpha, const Caps& caps = {});

template <Scalar T>
T principal_utility(const MultiActionInstance<T>& inst, const T& alpha, const Caps& caps = {});

// Pairwise crossings (c(S) - c(T)) / (f(S) - f(T)) inside [0, 1], plus 0 and 1,
// sorted and deduplicated. n <= caps.pairwise.
template <Scalar T>
std::vector<T> breakpoints(const MultiActionInstance<T>& inst, const Caps& caps = {});

// Optimal contract from the upper envelope of the lines f alpha - c: only the
// envelope's corners in (0, 1] and alpha = 0 can be optimal. Ties go to the
// smaller alpha. n <= caps.enumerate.
template <Scalar T>
MultiActionSolution<T> solve_exact(const MultiActionInstance<T>& inst, const Caps& caps = {});

// Same optimum by evaluating every pairwise breakpoint (n <= caps.pairwise).
template <Scalar T>
MultiActionSolution<T> solve_over_breakpoints(const MultiActionInstance<T>& inst, const Caps& caps = {});

}  // namespace contractlab::multiaction
