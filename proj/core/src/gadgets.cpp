#include "contractlab/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "contractlab/errors.hpp"

namespace contractlab::gadgets {
namespace {

Rational ratio(std::int64_t p, std::int64_t q) { return Rational(BigInt(p), BigInt(q)); }

Word next_same_popcount(Word x) {
  const Word c = x & (~x + 1);
  const Word r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

ItemSet range_set(std::size_t ground, std::size_t lo, std::size_t hi) {
  ItemSet s(ground);
  for (std::size_t u = lo; u < hi; ++u) s.insert(u);
  return s;
}

}  // namespace

std::size_t cube_root_exact(std::size_t n) {
  auto m = static_cast<std::size_t>(std::llround(std::cbrt(static_cast<double>(n))));
  for (std::size_t c : {m - 1, m, m + 1}) {
    if (c > 0 && c * c * c == n) return c;
  }
  throw InvalidArgument("n = " + std::to_string(n) + " is not a perfect cube");
}

ItemSet random_good_set(std::size_t n, std::mt19937_64& rng) {
  const std::size_t m = cube_root_exact(n);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  // Partial Fisher-Yates with explicit draws keeps the stream stable across standard libraries.
  for (std::size_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  return ItemSet::from_indices(n, std::span<const std::size_t>(all.data(), m));
}

template <Scalar T>
MultiAgentInstance<T> hidden_set_instance(std::size_t n, const ItemSet& good) {
  const std::size_t m = cube_root_exact(n);
  if (good.ground_size() != n) throw DimensionError("good set is over the wrong ground set");
  if (good.size() != m) throw InvalidArgument("good set must have exactly m = " + std::to_string(m) + " members");
  const T cost = num::from_ratio<T>(1, static_cast<std::int64_t>(2 * m * n));
  return MultiAgentInstance<T>(std::vector<T>(n, cost), setfn::SetFunction<T>(setfn::HiddenSetFn{n, m, good}));
}

template <Scalar T>
MultiAgentInstance<T> hidden_set_instance(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return hidden_set_instance<T>(n, random_good_set(n, rng));
}

bool is_successful_query(std::size_t n, const ItemSet& good, const ItemSet& s) {
  const std::size_t m = cube_root_exact(n);
  if (good.ground_size() != n || s.ground_size() != n) throw DimensionError("sets must be over [n]");
  const std::size_t size = s.size();
  const std::size_t inter = (s & good).size();
  return size * size <= m * m * m && inter * inter > m;
}

const setfn::CliqueGadgetFn& CliqueXosGadget::function() const {
  return std::get<setfn::CliqueGadgetFn>(instance.f.repr());
}

CliqueXosGadget clique_xos_instance(const Graph& g, std::size_t delta, const Rational& beta, bool normalize) {
  if (!(beta > Rational(0) && beta < Rational(1))) throw InvalidArgument("beta must lie in (0, 1)");
  if (delta == 0) throw InvalidArgument("delta must be at least 1");
  Graph augmented = g.with_added_clique(delta);
  const std::size_t size = augmented.vertex_count();
  const Rational eps = Rational(2) / beta - Rational(1);
  const Rational big_m = Rational(static_cast<std::int64_t>(size)) + eps;
  setfn::CliqueGadgetFn fn(augmented, delta, eps, big_m);
  Rational scale(1);
  if (normalize) scale = fn.value_bits(ItemSet::full(size).words());
  std::vector<Rational> costs(size, big_m / scale);
  setfn::SetFunction<Rational> f(std::move(fn), scale);
  return CliqueXosGadget{MultiActionInstance<Rational>(std::move(costs), std::move(f)),
                         std::move(augmented),
                         delta,
                         eps,
                         big_m,
                         g.vertex_count(),
                         scale};
}

Rational xos_clause_value(const setfn::CliqueGadgetFn& gadget, const ItemSet& t, const ItemSet& s) {
  const std::size_t n = gadget.graph().vertex_count();
  if (t.ground_size() != n || s.ground_size() != n) throw DimensionError("sets must be over the gadget's vertices");
  if (t.empty()) throw PreconditionError("clause index set T must be non-empty");
  const auto size = static_cast<std::int64_t>(t.size());
  const auto capped = static_cast<std::int64_t>(std::min(t.size(), gadget.delta()));
  const Rational weight = gadget.big_m() + Rational(gadget.graph().is_clique(t) ? 1 : 0) +
                          gadget.epsilon() * Rational(BigInt(capped), BigInt(size));
  return Rational(static_cast<std::int64_t>((s & t).size())) * weight;
}

PlantedCover planted_cover_coverage(std::size_t k, std::size_t copies_per_block) {
  if (k == 0) throw InvalidArgument("planted cover needs k >= 1");
  const std::size_t b = copies_per_block + 1;
  const std::size_t universe = k * b;
  setfn::CoverageFn f{universe, {}};
  for (std::size_t j = 0; j < k; ++j) f.covers.push_back(range_set(universe, j * b, (j + 1) * b));
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t next = (j + 1) % k;
    for (std::size_t t = 1; t <= copies_per_block; ++t) {
      ItemSet cover = range_set(universe, j * b + b - t, (j + 1) * b);
      cover |= range_set(universe, next * b, next * b + b - t);
      f.covers.push_back(std::move(cover));
    }
  }
  PlantedCover out{std::move(f), ItemSet(k * b)};
  for (std::size_t j = 0; j < k; ++j) out.planted.insert(j);
  require_singletons(k, out.function);
  return out;
}

void require_singletons(std::size_t k, const setfn::CoverageFn& fprime) {
  if (k == 0) throw InvalidArgument("k must be positive");
  for (std::size_t i = 0; i < fprime.covers.size(); ++i) {
    if (fprime.covers[i].size() * k != fprime.universe_size) {
      throw InvalidArgument("item " + std::to_string(i + 1) + " has f({i}) = " +
                            std::to_string(fprime.covers[i].size()) + "/" + std::to_string(fprime.universe_size) +
                            ", expected 1/" + std::to_string(k));
    }
  }
}

MultiAgentInstance<Rational> multiagent_submodular_gadget(std::size_t k, const setfn::CoverageFn& fprime) {
  require_singletons(k, fprime);
  const auto kk = static_cast<std::int64_t>(k);
  return MultiAgentInstance<Rational>(std::vector<Rational>(fprime.covers.size(), ratio(1, 2 * kk * kk)),
                                      setfn::SetFunction<Rational>(fprime));
}

MultiActionInstance<Rational> multiaction_submodular_gadget(std::size_t k, const setfn::CoverageFn& fprime,
                                                            const Rational& beta) {
  if (!(beta > Rational(0) && beta < ratio(1, 12))) throw InvalidArgument("beta must lie in (0, 1/12)");
  require_singletons(k, fprime);
  const std::size_t base = fprime.universe_size;
  setfn::CoverageFn f{2 * base, {}};
  f.covers.push_back(range_set(2 * base, base, 2 * base));
  for (const ItemSet& cover : fprime.covers) {
    ItemSet lifted(2 * base);
    for (std::size_t u : cover.indices()) lifted.insert(u);
    f.covers.push_back(std::move(lifted));
  }
  const auto kk = static_cast<std::int64_t>(k);
  std::vector<Rational> costs;
  costs.push_back((Rational(1) - beta * beta * beta) / Rational(2));
  for (std::size_t i = 0; i < fprime.covers.size(); ++i) costs.push_back((Rational(1) - beta * beta) / Rational(2 * kk));
  return MultiActionInstance<Rational>(std::move(costs), setfn::SetFunction<Rational>(std::move(f)));
}

RandomPseudoSymmetric random_pseudo_symmetric(std::size_t n, bool symmetric, std::mt19937_64& rng) {
  if (n == 0) throw InvalidArgument("n must be positive");
  std::uniform_int_distribution<int> step(0, 20);
  std::vector<std::int64_t> raw(n);
  for (auto& a : raw) a = step(rng);
  std::sort(raw.begin(), raw.end(), std::greater<>());
  const auto denom = static_cast<std::int64_t>(20 * n);
  // d[s] = h(s) - h(s - 1), 1-based.
  std::vector<Rational> d(n + 2, Rational(0));
  for (std::size_t s = 1; s <= n; ++s) d[s] = ratio(raw[s - 1], denom);

  RandomPseudoSymmetric out;
  out.spec.profile.assign(n + 1, Rational(0));
  for (std::size_t s = 1; s <= n; ++s) out.spec.profile[s] = out.spec.profile[s - 1] + d[s];

  std::uniform_int_distribution<std::size_t> size_pick(1, n);
  const std::size_t t = size_pick(rng);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < t; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  out.spec.special_set = ItemSet::from_indices(n, std::span<const std::size_t>(idx.data(), t));

  Rational bound = ratio(1, denom);
  if (t >= 2) bound = std::min(bound, d[t - 1] - d[t]);
  if (t + 2 <= n) bound = std::min(bound, d[t + 1] - d[t + 2]);
  if (t + 1 <= n) bound = std::min(bound, d[t + 1]);
  out.spec.bonus = symmetric ? Rational(0) : bound * ratio(step(rng), 20);

  std::uniform_int_distribution<int> cost_pick(0, 40);
  for (std::size_t i = 0; i < n; ++i) out.costs.push_back(ratio(cost_pick(rng), 10 * denom));
  return out;
}

std::vector<SoundnessRow> coverage_soundness_scan(const setfn::CoverageFn& f, std::size_t k_prime,
                                                  std::size_t max_size, double eps) {
  const std::size_t n = f.covers.size();
  require_within_cap(n, Caps{}.enumerate, "coverage soundness scan");
  const setfn::SetFunction<double> fn(f);
  std::vector<SoundnessRow> rows;
  for (std::size_t s = 1; s <= std::min(max_size, n); ++s) {
    SoundnessRow row{s, 0.0, 1.0 - std::exp(-static_cast<double>(s) / static_cast<double>(k_prime)) + eps, true};
    const Word last = ((Word{1} << s) - 1) << (n - s);
    for (Word mask = (Word{1} << s) - 1;; mask = next_same_popcount(mask)) {
      row.best_value = std::max(row.best_value, fn.value_mask(mask));
      if (mask == last) break;
    }
    row.within = row.best_value <= row.bound + kRealTolerance;
    rows.push_back(row);
  }
  return rows;
}

template MultiAgentInstance<double> hidden_set_instance<double>(std::size_t, const ItemSet&);
template MultiAgentInstance<Rational> hidden_set_instance<Rational>(std::size_t, const ItemSet&);
template MultiAgentInstance<double> hidden_set_instance<double>(std::size_t, std::uint64_t);
template MultiAgentInstance<Rational> hidden_set_instance<Rational>(std::size_t, std::uint64_t);

}  // namespace contractlab::gadgets
