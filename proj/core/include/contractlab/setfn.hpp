#pragma once

// Set-function representations with value, marginal and demand oracles, plus
// exhaustive monotonicity / submodularity checks.
//
// Every function is defined on a ground set {0, ..., n-1}. A SetFunction<T> is
// evaluated either in exact mode (T = Rational) or in real mode (T = double,
// comparisons up to kRealTolerance). Values are immutable after construction,
// so all oracles are safe to call concurrently.

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "contractlab/caps.hpp"
#include "contractlab/graph.hpp"
#include "contractlab/item_set.hpp"
#include "contractlab/numeric.hpp"

namespace contractlab::setfn {

// f(S) = sum of weights over S.
template <Scalar T>
struct AdditiveFn {
  std::vector<T> weights;
};

// Normalized unweighted coverage: f(S) = |union of covers[i], i in S| / universe_size.
struct CoverageFn {
  std::size_t universe_size = 0;
  std::vector<ItemSet> covers;  // each over the ground set [universe_size]
};

// f(S) = max over clauses of the clause's additive value.
template <Scalar T>
struct XosFn {
  std::vector<std::vector<T>> clauses;
};

// Explicit oracle: values[mask] = f(mask); length 2^n.
template <Scalar T>
struct TableFn {
  std::vector<T> values;
};

// f_G(S) = (1/n) max(|S & G|, sqrt(m), |S|/sqrt(m)) for non-empty S, 0 at the
// empty set; n = m^3 and |G| = m. In exact mode a value is only available when
// it is rational; otherwise IrrationalValue is thrown.
struct HiddenSetFn {
  std::size_t n = 0;
  std::size_t m = 0;
  ItemSet good;
};

// f(S) = (M + [S is a clique of G']) |S| + min(|S|, delta) eps on the augmented
// graph G'. The values only depend on |S| and the clique indicator, so both
// are tabulated at construction.
class CliqueGadgetFn {
 public:
  CliqueGadgetFn(Graph augmented, std::size_t delta, Rational epsilon, Rational big_m);

  const Graph& graph() const { return graph_; }
  std::size_t delta() const { return delta_; }
  const Rational& epsilon() const { return epsilon_; }
  const Rational& big_m() const { return big_m_; }

  const Rational& value_bits(std::span<const Word> bits) const;
  // Closed form on (size, clique indicator).
  const Rational& value_for(std::size_t size, bool clique) const;

 private:
  Graph graph_;
  std::size_t delta_;
  Rational epsilon_;
  Rational big_m_;
  std::vector<Rational> clique_by_size_;
  std::vector<Rational> other_by_size_;
};

template <Scalar T>
class SetFunction {
 public:
  using Repr = std::variant<AdditiveFn<T>, CoverageFn, XosFn<T>, TableFn<T>, HiddenSetFn, CliqueGadgetFn>;

  // Validates the representation's invariants; throws InvalidArgument.
  explicit SetFunction(Repr repr, T normalize_by = T(1));

  std::size_t ground_size() const { return n_; }
  const Repr& repr() const { return repr_; }
  const T& normalize_by() const { return normalize_by_; }

  // Throws DimensionError when s is over a different ground set.
  T value(const ItemSet& s) const;
  // Unchecked hot path: bits must span words_for(ground_size()) words.
  T value_bits(std::span<const Word> bits) const;
  T value_mask(Word mask) const { return value_bits(std::span<const Word>(&mask, 1)); }

 private:
  T raw_value(std::span<const Word> bits) const;

  Repr repr_;
  T normalize_by_;
  bool normalized_ = false;
  std::size_t n_ = 0;
};

template <Scalar T>
T value(const SetFunction<T>& f, const ItemSet& s) {
  return f.value(s);
}

// f(i | S) = f(S + i) - f(S); throws PreconditionError when i is already in S.
template <Scalar T>
T marginal(const SetFunction<T>& f, std::size_t i, const ItemSet& s);

// Exhaustive argmax of f(S) - sum_{i in S} prices[i]; ties go to the smaller bitmask.
template <Scalar T>
ItemSet demand(const SetFunction<T>& f, std::span<const T> prices, const Caps& caps = {});

// First witness of a violated inequality. For monotonicity: f(smaller + item)
// < f(smaller) with larger = smaller + item. For submodularity:
// f(item | smaller) < f(item | larger) where larger = smaller + one element.
struct ClassWitness {
  std::size_t item = 0;
  ItemSet smaller;
  ItemSet larger;
};

struct ClassReport {
  bool monotone = true;
  bool submodular = true;
  std::optional<ClassWitness> monotone_witness;
  std::optional<ClassWitness> submodular_witness;
};

// Exhaustive check, n <= caps.class_check. Submodularity is tested through the
// equivalent single-step condition f(i|S) >= f(i|S+j) for all S and i != j
// outside S, which implies the inequality for every nested pair.
template <Scalar T>
ClassReport check_classes(const SetFunction<T>& f, const Caps& caps = {});

// Same function evaluated in floating point.
SetFunction<double> to_real(const SetFunction<Rational>& f);

}  // namespace contractlab::setfn
