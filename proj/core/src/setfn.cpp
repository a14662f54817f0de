#include "contractlab/setfn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "contractlab/errors.hpp"
#include "contractlab/parallel.hpp"

namespace contractlab::setfn {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t integer_sqrt(std::size_t x) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

template <Scalar T>
void require_non_negative(std::span<const T> xs, const char* what) {
  for (const T& x : xs) {
    if (x < T(0)) throw InvalidArgument(std::string(what) + " must be non-negative");
  }
}

template <Scalar T>
T sum_over(std::span<const T> weights, std::span<const Word> bits) {
  T total(0);
  for (std::size_t w = 0; w < bits.size(); ++w) {
    Word b = bits[w];
    while (b != 0) {
      total += weights[w * kWordBits + static_cast<std::size_t>(std::countr_zero(b))];
      b &= b - 1;
    }
  }
  return total;
}

// Which of the three terms of f_G attains the maximum, decided with integer
// arithmetic on squares so that ties are exact.
enum class HiddenTerm { intersection, root, scaled_size };

HiddenTerm dominant_term(std::size_t inter, std::size_t size, std::size_t m) {
  const std::size_t a2 = inter * inter;
  if (a2 >= m && a2 * m >= size * size) return HiddenTerm::intersection;
  if (m >= size) return HiddenTerm::root;
  return HiddenTerm::scaled_size;
}

template <Scalar T>
T hidden_value(const HiddenSetFn& h, std::span<const Word> bits) {
  const std::size_t size = popcount(bits);
  if (size == 0) return T(0);
  std::size_t inter = 0;
  auto good = h.good.words();
  for (std::size_t w = 0; w < bits.size(); ++w) inter += static_cast<std::size_t>(std::popcount(bits[w] & good[w]));
  const auto n = static_cast<std::int64_t>(h.n);
  const HiddenTerm term = dominant_term(inter, size, h.m);
  if (term == HiddenTerm::intersection) return num::from_ratio<T>(static_cast<std::int64_t>(inter), n);
  if constexpr (std::is_same_v<T, double>) {
    const double root = std::sqrt(static_cast<double>(h.m));
    return term == HiddenTerm::root ? root / static_cast<double>(n)
                                    : static_cast<double>(size) / (root * static_cast<double>(n));
  } else {
    const std::size_t r = integer_sqrt(h.m);
    if (r * r != h.m) {
      throw IrrationalValue("hidden-set value involves sqrt(" + std::to_string(h.m) +
                            ") and has no exact rational representation");
    }
    const auto rr = static_cast<std::int64_t>(r);
    return term == HiddenTerm::root ? Rational(BigInt(rr), BigInt(n))
                                    : Rational(BigInt(static_cast<std::int64_t>(size)), BigInt(rr * n));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// CliqueGadgetFn

CliqueGadgetFn::CliqueGadgetFn(Graph augmented, std::size_t delta, Rational epsilon, Rational big_m)
    : graph_(std::move(augmented)), delta_(delta), epsilon_(std::move(epsilon)), big_m_(std::move(big_m)) {
  const std::size_t n = graph_.vertex_count();
  if (delta_ == 0) throw InvalidArgument("clique gadget needs delta >= 1");
  if (delta_ > n) throw InvalidArgument("clique gadget graph is smaller than delta");
  if (epsilon_ < Rational(0)) throw InvalidArgument("clique gadget epsilon must be non-negative");
  if (!(big_m_ > Rational(static_cast<std::int64_t>(n)))) {
    throw InvalidArgument("clique gadget needs M > |V'|");
  }
  ItemSet added(n);
  for (std::size_t v = n - delta_; v < n; ++v) added.insert(v);
  if (!graph_.is_clique(added)) {
    throw InvalidArgument("the last delta vertices of the gadget graph must form the added clique");
  }
  clique_by_size_.reserve(n + 1);
  other_by_size_.reserve(n + 1);
  for (std::size_t s = 0; s <= n; ++s) {
    const Rational size(static_cast<std::int64_t>(s));
    const Rational bonus = Rational(static_cast<std::int64_t>(std::min(s, delta_))) * epsilon_;
    clique_by_size_.push_back((big_m_ + Rational(1)) * size + bonus);
    other_by_size_.push_back(big_m_ * size + bonus);
  }
}

const Rational& CliqueGadgetFn::value_for(std::size_t size, bool clique) const {
  return clique ? clique_by_size_.at(size) : other_by_size_.at(size);
}

const Rational& CliqueGadgetFn::value_bits(std::span<const Word> bits) const {
  return value_for(popcount(bits), graph_.is_clique(bits));
}

// ---------------------------------------------------------------------------
// SetFunction

template <Scalar T>
SetFunction<T>::SetFunction(Repr repr, T normalize_by) : repr_(std::move(repr)), normalize_by_(std::move(normalize_by)) {
  if (!(normalize_by_ > T(0))) throw InvalidArgument("normalize_by must be positive");
  normalized_ = normalize_by_ != T(1);
  n_ = std::visit(
      overloaded{
          [](const AdditiveFn<T>& a) {
            require_non_negative<T>(a.weights, "additive weights");
            return a.weights.size();
          },
          [](const CoverageFn& c) {
            if (c.universe_size == 0) throw InvalidArgument("coverage universe must be non-empty");
            for (const ItemSet& cover : c.covers) {
              if (cover.ground_size() != c.universe_size) {
                throw InvalidArgument("coverage set is not a subset of the universe");
              }
            }
            return c.covers.size();
          },
          [](const XosFn<T>& x) {
            if (x.clauses.empty()) throw InvalidArgument("XOS function needs at least one clause");
            const std::size_t n = x.clauses.front().size();
            for (const auto& clause : x.clauses) {
              if (clause.size() != n) throw InvalidArgument("XOS clauses must all have length n");
              require_non_negative<T>(clause, "XOS clause entries");
            }
            return n;
          },
          [](const TableFn<T>& t) {
            const std::size_t len = t.values.size();
            if (len == 0 || !std::has_single_bit(len)) throw InvalidArgument("table length must be 2^n");
            const auto n = static_cast<std::size_t>(std::countr_zero(len));
            if (n > 30) throw InvalidArgument("table functions are limited to 30 items");
            require_non_negative<T>(t.values, "table values");
            return n;
          },
          [](const HiddenSetFn& h) {
            if (h.m == 0 || h.m * h.m * h.m != h.n) throw InvalidArgument("hidden-set function needs n = m^3");
            if (h.good.ground_size() != h.n) throw InvalidArgument("hidden good set has the wrong ground set");
            if (h.good.size() != h.m) throw InvalidArgument("hidden good set must have exactly m members");
            return h.n;
          },
          [](const CliqueGadgetFn& g) { return g.graph().vertex_count(); },
      },
      repr_);
}

template <Scalar T>
T SetFunction<T>::raw_value(std::span<const Word> bits) const {
  return std::visit(
      overloaded{
          [&](const AdditiveFn<T>& a) { return sum_over<T>(a.weights, bits); },
          [&](const CoverageFn& c) {
            std::vector<Word> covered(words_for(c.universe_size), 0);
            for (std::size_t w = 0; w < bits.size(); ++w) {
              Word b = bits[w];
              while (b != 0) {
                const auto i = w * kWordBits + static_cast<std::size_t>(std::countr_zero(b));
                b &= b - 1;
                auto cw = c.covers[i].words();
                for (std::size_t u = 0; u < covered.size(); ++u) covered[u] |= cw[u];
              }
            }
            return num::from_ratio<T>(static_cast<std::int64_t>(popcount(covered)),
                                      static_cast<std::int64_t>(c.universe_size));
          },
          [&](const XosFn<T>& x) {
            T best = sum_over<T>(x.clauses.front(), bits);
            for (std::size_t k = 1; k < x.clauses.size(); ++k) {
              T v = sum_over<T>(x.clauses[k], bits);
              if (v > best) best = std::move(v);
            }
            return best;
          },
          [&](const TableFn<T>& t) { return t.values[bits.empty() ? 0 : static_cast<std::size_t>(bits[0])]; },
          [&](const HiddenSetFn& h) { return hidden_value<T>(h, bits); },
          [&](const CliqueGadgetFn& g) { return num::from_rational<T>(g.value_bits(bits)); },
      },
      repr_);
}

template <Scalar T>
T SetFunction<T>::value_bits(std::span<const Word> bits) const {
  if (!normalized_) return raw_value(bits);
  return raw_value(bits) / normalize_by_;
}

template <Scalar T>
T SetFunction<T>::value(const ItemSet& s) const {
  if (s.ground_size() != n_) {
    throw DimensionError("set over " + std::to_string(s.ground_size()) + " items used with a function on " +
                         std::to_string(n_) + " items");
  }
  return value_bits(s.words());
}

// ---------------------------------------------------------------------------
// Oracles

template <Scalar T>
T marginal(const SetFunction<T>& f, std::size_t i, const ItemSet& s) {
  if (s.contains(i)) {
    throw PreconditionError("marginal(i, S) requires i outside S (i = " + std::to_string(i + 1) + ")");
  }
  return f.value(s.with(i)) - f.value(s);
}

template <Scalar T>
ItemSet demand(const SetFunction<T>& f, std::span<const T> prices, const Caps& caps) {
  const std::size_t n = f.ground_size();
  if (prices.size() != n) throw DimensionError("price vector length does not match the ground set");
  require_within_cap(n, caps.enumerate, "demand");
  for (const T& p : prices) {
    if (p < T(0)) throw PreconditionError("demand prices must be non-negative");
  }
  struct Best {
    T surplus{0};
    Word mask = 0;
    bool set = false;
  };
  const std::uint64_t total = std::uint64_t{1} << n;
  auto chunks = map_chunks<Best>(total, [&](std::uint64_t lo, std::uint64_t hi) {
    Best best;
    for (Word mask = lo; mask < hi; ++mask) {
      T surplus = f.value_mask(mask) - sum_over<T>(prices, std::span<const Word>(&mask, 1));
      if (!best.set || num::gt(surplus, best.surplus)) best = {std::move(surplus), mask, true};
    }
    return best;
  });
  Best best = chunks.front();
  for (std::size_t c = 1; c < chunks.size(); ++c) {
    if (num::gt(chunks[c].surplus, best.surplus)) best = chunks[c];
  }
  return ItemSet::from_mask(n, best.mask);
}

template <Scalar T>
ClassReport check_classes(const SetFunction<T>& f, const Caps& caps) {
  const std::size_t n = f.ground_size();
  require_within_cap(n, caps.class_check, "check_classes");
  const std::size_t total = std::size_t{1} << n;
  std::vector<T> table(total);
  for (std::size_t mask = 0; mask < total; ++mask) table[mask] = f.value_mask(mask);

  ClassReport report;
  for (std::size_t mask = 0; mask < total && report.monotone; ++mask) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      if ((mask & bit) != 0) continue;
      if (num::lt(table[mask | bit], table[mask])) {
        report.monotone = false;
        report.monotone_witness = ClassWitness{i, ItemSet::from_mask(n, mask), ItemSet::from_mask(n, mask | bit)};
        break;
      }
    }
  }
  std::vector<T> gain(total);
  for (std::size_t i = 0; i < n && report.submodular; ++i) {
    const std::size_t bi = std::size_t{1} << i;
    for (std::size_t mask = 0; mask < total; ++mask) {
      if ((mask & bi) == 0) gain[mask] = table[mask | bi] - table[mask];
    }
    for (std::size_t mask = 0; mask < total && report.submodular; ++mask) {
      if ((mask & bi) != 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t bj = std::size_t{1} << j;
        if (j == i || (mask & bj) != 0) continue;
        if (num::lt(gain[mask], gain[mask | bj])) {
          report.submodular = false;
          report.submodular_witness = ClassWitness{i, ItemSet::from_mask(n, mask), ItemSet::from_mask(n, mask | bj)};
          break;
        }
      }
    }
  }
  return report;
}

SetFunction<double> to_real(const SetFunction<Rational>& f) {
  auto convert = [](const std::vector<Rational>& xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(to_double(x));
    return out;
  };
  using R = SetFunction<double>::Repr;
  R repr = std::visit(
      overloaded{
          [&](const AdditiveFn<Rational>& a) -> R { return AdditiveFn<double>{convert(a.weights)}; },
          [](const CoverageFn& c) -> R { return c; },
          [&](const XosFn<Rational>& x) -> R {
            XosFn<double> out;
            for (const auto& clause : x.clauses) out.clauses.push_back(convert(clause));
            return out;
          },
          [&](const TableFn<Rational>& t) -> R { return TableFn<double>{convert(t.values)}; },
          [](const HiddenSetFn& h) -> R { return h; },
          [](const CliqueGadgetFn& g) -> R { return g; },
      },
      f.repr());
  return SetFunction<double>(std::move(repr), to_double(f.normalize_by()));
}

#define CONTRACTLAB_INSTANTIATE(T)                                                        \
  template class SetFunction<T>;                                                          \
  template T marginal<T>(const SetFunction<T>&, std::size_t, const ItemSet&);             \
  template ItemSet demand<T>(const SetFunction<T>&, std::span<const T>, const Caps&);     \
  template ClassReport check_classes<T>(const SetFunction<T>&, const Caps&);

CONTRACTLAB_INSTANTIATE(double)
CONTRACTLAB_INSTANTIATE(Rational)
#undef CONTRACTLAB_INSTANTIATE

}  // namespace contractlab::setfn
