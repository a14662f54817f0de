#include "contractlab/multiaction.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <string>
#include <unordered_map>

#include "contractlab/errors.hpp"
#include "contractlab/parallel.hpp"

namespace contractlab::multiaction {
namespace {

template <Scalar T>
void require_alpha(const T& alpha) {
  if (alpha < T(0) || alpha > T(1)) throw PreconditionError("alpha must lie in [0, 1]");
}

template <Scalar T>
T mask_cost(const std::vector<T>& costs, Word mask) {
  T total(0);
  for (Word b = mask; b != 0; b &= b - 1) total += costs[static_cast<std::size_t>(std::countr_zero(b))];
  return total;
}

// True when (u, v, mask) beats the incumbent under the agent's tie-breaking.
template <Scalar T>
bool better_response(const T& u, const T& v, Word mask, const T& bu, const T& bv, Word bmask) {
  if (num::gt(u, bu)) return true;
  if (!num::eq(u, bu)) return false;
  if (num::gt(v, bv)) return true;
  if (!num::eq(v, bv)) return false;
  return mask < bmask;
}

template <Scalar T>
struct PointKey {
  T value;
  T cost;
  bool operator==(const PointKey&) const = default;
};

template <Scalar T>
std::size_t hash_scalar(const T& x) {
  if constexpr (num::is_exact<T>()) {
    const std::hash<BigInt> h;
    return h(x.numerator()) * 31 + h(x.denominator());
  } else {
    return std::hash<double>{}(x);
  }
}

template <Scalar T>
struct PointKeyHash {
  std::size_t operator()(const PointKey<T>& k) const { return hash_scalar(k.value) * 1000003 ^ hash_scalar(k.cost); }
};

template <Scalar T>
T crossing(const ActionPoint<T>& p, const ActionPoint<T>& q) {
  return (q.cost - p.cost) / (q.value - p.value);
}

template <Scalar T>
MultiActionSolution<T> best_of(const ActionProfile<T>& profile, const std::vector<T>& candidates) {
  const T* best_alpha = nullptr;
  T best_u(0);
  for (const T& a : candidates) {
    T u = profile.principal_utility(a);
    if (best_alpha == nullptr || num::gt(u, best_u)) {
      best_alpha = &a;
      best_u = std::move(u);
    }
  }
  const ActionPoint<T>& br = profile.best_response(*best_alpha);
  return {*best_alpha, ItemSet::from_mask(profile.ground_size(), br.mask), best_u};
}

}  // namespace

template <Scalar T>
MultiActionInstance<T>::MultiActionInstance(std::vector<T> c, SetFunction<T> fn)
    : costs(std::move(c)), f(std::move(fn)) {
  if (costs.size() != f.ground_size()) {
    throw DimensionError("cost vector has " + std::to_string(costs.size()) + " entries for " +
                         std::to_string(f.ground_size()) + " actions");
  }
  for (const T& x : costs) {
    if (x < T(0)) throw InvalidArgument("costs must be non-negative");
  }
}

template <Scalar T>
ActionProfile<T>::ActionProfile(const MultiActionInstance<T>& inst, const Caps& caps) : n_(inst.size()) {
  require_within_cap(n_, caps.enumerate, "action profile");
  const std::uint64_t total = std::uint64_t{1} << n_;
  std::vector<T> values(total);
  const ChunkPlan plan(total);
  run_chunks(plan, [&](std::size_t c) {
    for (Word mask = plan.begin(c); mask < plan.end(c); ++mask) values[mask] = inst.f.value_mask(mask);
  });
  std::vector<T> costs(total);
  costs[0] = T(0);
  for (Word mask = 1; mask < total; ++mask) {
    costs[mask] = costs[mask & (mask - 1)] + inst.costs[static_cast<std::size_t>(std::countr_zero(mask))];
  }
  // Masks arrive in increasing order, so the first mask seen for a pair is the smallest.
  std::unordered_map<PointKey<T>, std::size_t, PointKeyHash<T>> seen;
  for (Word mask = 0; mask < total; ++mask) {
    if (seen.try_emplace(PointKey<T>{values[mask], costs[mask]}, points_.size()).second) {
      points_.push_back({values[mask], costs[mask], mask});
    }
  }
  std::sort(points_.begin(), points_.end(), [](const ActionPoint<T>& a, const ActionPoint<T>& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.cost < b.cost;
  });
}

template <Scalar T>
const ActionPoint<T>& ActionProfile<T>::best_response(const T& alpha) const {
  require_alpha(alpha);
  const ActionPoint<T>* best = &points_.front();
  T best_u = best->value * alpha - best->cost;
  for (const auto& p : points_) {
    T u = p.value * alpha - p.cost;
    if (better_response(u, p.value, p.mask, best_u, best->value, best->mask)) {
      best = &p;
      best_u = std::move(u);
    }
  }
  return *best;
}

template <Scalar T>
T ActionProfile<T>::principal_utility(const T& alpha) const {
  return best_response(alpha).value * (T(1) - alpha);
}

template <Scalar T>
ItemSet agent_best_response(const MultiActionInstance<T>& inst, const T& alpha, const Caps& caps) {
  require_alpha(alpha);
  const std::size_t n = inst.size();
  require_within_cap(n, caps.enumerate, "agent best response");
  struct Best {
    T u{0};
    T v{0};
    Word mask = 0;
    bool set = false;
  };
  auto chunks = map_chunks<Best>(std::uint64_t{1} << n, [&](std::uint64_t lo, std::uint64_t hi) {
    Best best;
    for (Word mask = lo; mask < hi; ++mask) {
      T v = inst.f.value_mask(mask);
      T u = v * alpha - mask_cost(inst.costs, mask);
      if (!best.set || better_response(u, v, mask, best.u, best.v, best.mask)) {
        best = {std::move(u), std::move(v), mask, true};
      }
    }
    return best;
  });
  Best best = chunks.front();
  for (std::size_t c = 1; c < chunks.size(); ++c) {
    const Best& b = chunks[c];
    if (better_response(b.u, b.v, b.mask, best.u, best.v, best.mask)) best = b;
  }
  return ItemSet::from_mask(n, best.mask);
}

template <Scalar T>
T principal_utility(const MultiActionInstance<T>& inst, const T& alpha, const Caps& caps) {
  return inst.f.value(agent_best_response(inst, alpha, caps)) * (T(1) - alpha);
}

template <Scalar T>
std::vector<T> breakpoints(const MultiActionInstance<T>& inst, const Caps& caps) {
  require_within_cap(inst.size(), caps.pairwise, "breakpoint enumeration");
  const ActionProfile<T> profile(inst, caps);
  const auto& pts = profile.points();
  auto chunks = map_chunks<std::vector<T>>(pts.size(), [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<T> out;
    for (std::size_t a = lo; a < hi; ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        if (num::eq(pts[a].value, pts[b].value)) continue;
        T x = crossing(pts[a], pts[b]);
        if (x >= T(0) && x <= T(1)) out.push_back(std::move(x));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  });
  std::vector<T> all{T(0), T(1)};
  for (auto& c : chunks) all.insert(all.end(), c.begin(), c.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end(), [](const T& a, const T& b) { return num::eq(a, b); }), all.end());
  return all;
}

template <Scalar T>
MultiActionSolution<T> solve_exact(const MultiActionInstance<T>& inst, const Caps& caps) {
  const ActionProfile<T> profile(inst, caps);

  // Cheapest point per value, in increasing slope order.
  std::vector<const ActionPoint<T>*> lines;
  for (const auto& p : profile.points()) {
    if (lines.empty() || lines.back()->value != p.value) lines.push_back(&p);
  }
  std::vector<const ActionPoint<T>*> hull;
  for (const auto* line : lines) {
    while (hull.size() >= 2 && crossing(*hull[hull.size() - 2], *line) <= crossing(*hull[hull.size() - 2], *hull.back())) {
      hull.pop_back();
    }
    hull.push_back(line);
  }

  std::vector<T> candidates{T(0)};
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    T x = crossing(*hull[h], *hull[h + 1]);
    if (x > T(0) && x <= T(1)) candidates.push_back(std::move(x));
  }
  return best_of(profile, candidates);
}

template <Scalar T>
MultiActionSolution<T> solve_over_breakpoints(const MultiActionInstance<T>& inst, const Caps& caps) {
  const auto candidates = breakpoints(inst, caps);
  return best_of(ActionProfile<T>(inst, caps), candidates);
}

#define CONTRACTLAB_INSTANTIATE(T)                                                                          \
  template struct MultiActionInstance<T>;                                                                   \
  template class ActionProfile<T>;                                                                          \
  template ItemSet agent_best_response<T>(const MultiActionInstance<T>&, const T&, const Caps&);            \
  template T principal_utility<T>(const MultiActionInstance<T>&, const T&, const Caps&);                    \
  template std::vector<T> breakpoints<T>(const MultiActionInstance<T>&, const Caps&);                       \
  template MultiActionSolution<T> solve_exact<T>(const MultiActionInstance<T>&, const Caps&);               \
  template MultiActionSolution<T> solve_over_breakpoints<T>(const MultiActionInstance<T>&, const Caps&);

CONTRACTLAB_INSTANTIATE(double)
CONTRACTLAB_INSTANTIATE(Rational)
#undef CONTRACTLAB_INSTANTIATE

}  // namespace contractlab::multiaction
