#include "contractlab/multiagent.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "contractlab/errors.hpp"
#include "contractlab/parallel.hpp"

namespace contractlab::multiagent {
namespace {

constexpr std::size_t kTabulateLimit = 20;

template <Scalar T>
Extended<T> payment_for(const T& cost, const T& gain) {
  if (num::le(gain, T(0))) {
    if (num::is_zero(cost)) return Extended<T>(T(0));
    return Extended<T>::plus_infinity();
  }
  return Extended<T>(cost / gain);
}

// g from f(S) and the n values f(S - i); value_without(i) is only called for i in S.
template <Scalar T, class Without>
Extended<T> objective_from(const std::vector<T>& costs, Word mask, const T& fs, Without&& value_without) {
  T total(0);
  bool infinite = false;
  for (Word b = mask; b != 0; b &= b - 1) {
    const auto i = static_cast<std::size_t>(std::countr_zero(b));
    const Extended<T> p = payment_for(costs[i], fs - value_without(i));
    if (p.is_finite()) {
      total += p.value();
    } else {
      infinite = true;
    }
  }
  if (infinite) return num::gt(fs, T(0)) ? Extended<T>::minus_infinity() : Extended<T>(T(0));
  return Extended<T>((T(1) - total) * fs);
}

template <Scalar T>
struct Candidate {
  Extended<T> objective = Extended<T>::minus_infinity();
  Word mask = 0;
  bool set = false;
};

template <Scalar T>
void offer(Candidate<T>& best, Extended<T> g, Word mask) {
  if (!best.set || definitely_greater(g, best.objective) ||
      (approx_equal(g, best.objective) && mask < best.mask)) {
    best = {std::move(g), mask, true};
  }
}

template <Scalar T>
MultiAgentSolution<T> finish(const MultiAgentInstance<T>& inst, Word mask) {
  MultiAgentSolution<T> out;
  out.set = ItemSet::from_mask(inst.size(), mask);
  out.payments = equilibrium_payments(inst, out.set);
  out.objective = objective_g(inst, out.set);
  return out;
}

// Next mask with the same popcount (Gosper's hack).
Word next_same_popcount(Word x) {
  const Word c = x & (~x + 1);
  const Word r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

std::uint64_t binomial_prefix_sum(std::size_t n, std::size_t k) {
  std::uint64_t total = 0;
  std::uint64_t term = 1;
  for (std::size_t s = 0; s <= k && s <= n; ++s) {
    total += term;
    term = term * (n - s) / (s + 1);
  }
  return total;
}

}  // namespace

template <Scalar T>
MultiAgentInstance<T>::MultiAgentInstance(std::vector<T> c, SetFunction<T> fn) : costs(std::move(c)), f(std::move(fn)) {
  if (costs.size() != f.ground_size()) {
    throw DimensionError("cost vector has " + std::to_string(costs.size()) + " entries for " +
                         std::to_string(f.ground_size()) + " agents");
  }
  for (const T& x : costs) {
    if (x < T(0)) throw InvalidArgument("costs must be non-negative");
  }
}

template <Scalar T>
std::vector<Extended<T>> equilibrium_payments(const MultiAgentInstance<T>& inst, const ItemSet& s) {
  std::vector<Extended<T>> out(inst.size(), Extended<T>(T(0)));
  const T fs = inst.f.value(s);
  for (std::size_t i : s.indices()) out[i] = payment_for(inst.costs[i], fs - inst.f.value(s.without(i)));
  return out;
}

template <Scalar T>
Extended<T> objective_g(const MultiAgentInstance<T>& inst, const ItemSet& s) {
  const T fs = inst.f.value(s);
  T total(0);
  bool infinite = false;
  for (std::size_t i : s.indices()) {
    const Extended<T> p = payment_for(inst.costs[i], fs - inst.f.value(s.without(i)));
    if (p.is_finite()) {
      total += p.value();
    } else {
      infinite = true;
    }
  }
  if (infinite) return num::gt(fs, T(0)) ? Extended<T>::minus_infinity() : Extended<T>(T(0));
  return Extended<T>((T(1) - total) * fs);
}

template <Scalar T>
bool verify_equilibrium(const MultiAgentInstance<T>& inst, std::span<const T> payments, const ItemSet& s) {
  if (payments.size() != inst.size()) throw DimensionError("payment vector length does not match agent count");
  const T fs = inst.f.value(s);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const T& a = payments[i];
    if (s.contains(i)) {
      if (num::lt(a * fs - inst.costs[i], a * inst.f.value(s.without(i)))) return false;
    } else {
      if (num::lt(a * fs, a * inst.f.value(s.with(i)) - inst.costs[i])) return false;
    }
  }
  return true;
}

template <Scalar T>
MultiAgentSolution<T> solve_exact(const MultiAgentInstance<T>& inst, std::optional<std::size_t> size_cap,
                                  const Caps& caps) {
  const std::size_t n = inst.size();
  const auto& f = inst.f;

  if (size_cap && *size_cap < n) {
    if (n > 64) throw CapExceeded("size-capped search supports at most 64 agents");
    const std::uint64_t count = binomial_prefix_sum(n, *size_cap);
    if (count > (std::uint64_t{1} << caps.enumerate)) {
      throw CapExceeded("size-capped search would scan " + std::to_string(count) + " sets");
    }
    Candidate<T> best;
    for (std::size_t k = 0; k <= *size_cap; ++k) {
      if (k == 0) {
        offer(best, Extended<T>(f.value_mask(0)), Word{0});
        continue;
      }
      const Word last = ((Word{1} << k) - 1) << (n - k);
      for (Word mask = (Word{1} << k) - 1;; mask = next_same_popcount(mask)) {
        const T fs = f.value_mask(mask);
        offer(best, objective_from(inst.costs, mask, fs, [&](std::size_t i) { return f.value_mask(mask & ~(Word{1} << i)); }),
              mask);
        if (mask == last) break;
      }
    }
    return finish(inst, best.mask);
  }

  require_within_cap(n, caps.enumerate, "multi-agent solve_exact");
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<T> table;
  if (n <= kTabulateLimit) {
    table.resize(total);
    const ChunkPlan plan(total);
    run_chunks(plan, [&](std::size_t c) {
      for (Word mask = plan.begin(c); mask < plan.end(c); ++mask) table[mask] = f.value_mask(mask);
    });
  }
  auto chunks = map_chunks<Candidate<T>>(total, [&](std::uint64_t lo, std::uint64_t hi) {
    Candidate<T> best;
    for (Word mask = lo; mask < hi; ++mask) {
      if (!table.empty()) {
        offer(best, objective_from(inst.costs, mask, table[mask], [&](std::size_t i) { return table[mask & ~(Word{1} << i)]; }),
              mask);
      } else {
        const T fs = f.value_mask(mask);
        offer(best,
              objective_from(inst.costs, mask, fs, [&](std::size_t i) { return f.value_mask(mask & ~(Word{1} << i)); }),
              mask);
      }
    }
    return best;
  });
  Candidate<T> best = chunks.front();
  for (std::size_t c = 1; c < chunks.size(); ++c) {
    if (definitely_greater(chunks[c].objective, best.objective)) best = chunks[c];
  }
  return finish(inst, best.mask);
}

template <Scalar T>
SetFunction<T> pseudo_symmetric_function(const PseudoSymmetricSpec<T>& spec) {
  const std::size_t n = spec.special_set.ground_size();
  if (n > Caps{}.class_check) throw CapExceeded("pseudo-symmetric specs are validated exhaustively up to 16 items");
  if (spec.profile.size() != n + 1) throw InvalidArgument("profile must list h(0..n)");
  for (std::size_t s = 0; s < n; ++s) {
    if (spec.profile[s] < T(0) || num::lt(spec.profile[s + 1], spec.profile[s])) {
      throw InvalidArgument("profile must be non-negative and non-decreasing");
    }
  }
  if (spec.bonus < T(0)) throw InvalidArgument("bonus must be non-negative");
  const Word special = n == 0 ? 0 : spec.special_set.mask();
  std::vector<T> values(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < values.size(); ++mask) {
    values[mask] = spec.profile[static_cast<std::size_t>(std::popcount(mask))];
    if (mask == special) values[mask] += spec.bonus;
  }
  SetFunction<T> f(setfn::TableFn<T>{std::move(values)});
  const auto report = setfn::check_classes(f);
  if (!report.submodular) {
    const auto& w = *report.submodular_witness;
    throw InvalidArgument("pseudo-symmetric function is not submodular: item " + std::to_string(w.item + 1) +
                          " gains more at " + w.larger.to_string() + " than at " + w.smaller.to_string());
  }
  return f;
}

std::vector<ItemSet> ptas_candidate_family(std::size_t n, double eps) {
  if (!(eps > 0)) throw InvalidArgument("eps must be positive");
  require_within_cap(n, Caps{}.enumerate, "PTAS candidate family");
  const double limit = 2.0 / eps + 1e-9;
  const std::size_t k = limit >= static_cast<double>(n) ? n : static_cast<std::size_t>(limit);
  std::vector<Word> masks;
  for (std::size_t i = 0; i <= n; ++i) masks.push_back((Word{1} << i) - 1);
  for (std::size_t s = 1; s <= k; ++s) {
    const Word last = ((Word{1} << s) - 1) << (n - s);
    for (Word mask = (Word{1} << s) - 1;; mask = next_same_popcount(mask)) {
      masks.push_back(mask);
      if (mask == last) break;
    }
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<ItemSet> out;
  out.reserve(masks.size());
  for (Word m : masks) out.push_back(ItemSet::from_mask(n, m));
  return out;
}

template <Scalar T>
MultiAgentSolution<T> solve_ptas_pseudosymmetric(const PseudoSymmetricSpec<T>& spec, const std::vector<T>& costs,
                                                 double eps) {
  MultiAgentInstance<T> inst(costs, pseudo_symmetric_function(spec));
  const std::size_t n = inst.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });

  Candidate<T> best;
  for (const ItemSet& sorted : ptas_candidate_family(n, eps)) {
    Word mask = 0;
    for (std::size_t pos : sorted.indices()) mask |= Word{1} << order[pos];
    offer(best, objective_g(inst, ItemSet::from_mask(n, mask)), mask);
  }
  return finish(inst, best.mask);
}

#define CONTRACTLAB_INSTANTIATE(T)                                                                                   \
  template struct MultiAgentInstance<T>;                                                                             \
  template std::vector<Extended<T>> equilibrium_payments<T>(const MultiAgentInstance<T>&, const ItemSet&);           \
  template Extended<T> objective_g<T>(const MultiAgentInstance<T>&, const ItemSet&);                                 \
  template bool verify_equilibrium<T>(const MultiAgentInstance<T>&, std::span<const T>, const ItemSet&);             \
  template MultiAgentSolution<T> solve_exact<T>(const MultiAgentInstance<T>&, std::optional<std::size_t>,            \
                                                const Caps&);                                                        \
  template SetFunction<T> pseudo_symmetric_function<T>(const PseudoSymmetricSpec<T>&);                               \
  template MultiAgentSolution<T> solve_ptas_pseudosymmetric<T>(const PseudoSymmetricSpec<T>&, const std::vector<T>&, \
                                                               double);

CONTRACTLAB_INSTANTIATE(double)
CONTRACTLAB_INSTANTIATE(Rational)
#undef CONTRACTLAB_INSTANTIATE

}  // namespace contractlab::multiagent
