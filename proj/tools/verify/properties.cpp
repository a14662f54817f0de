#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "contractlab/cliquereduce.hpp"
#include "contractlab/gadgets.hpp"
#include "contractlab/verify.hpp"
#include "fixtures.hpp"
#include "report.hpp"

namespace contractlab::verify {

using detail::cat;
using detail::str;
using detail::Tally;
using fixtures::ratio;

namespace {

template <Scalar T>
T price_of(const std::vector<T>& prices, const ItemSet& s) {
  T total(0);
  for (std::size_t i : s.indices()) total += prices[i];
  return total;
}

}  // namespace

SuiteResult setfn_properties(const VerifyConfig& config) {
  SuiteResult r;
  std::mt19937_64 rng(config.seed ^ 0x510e527fade682d1ULL);
  std::uniform_int_distribution<std::size_t> small(1, 10);

  Tally coverage;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = small(rng);
    setfn::CoverageFn c{std::uniform_int_distribution<std::size_t>(1, 12)(rng), {}};
    std::bernoulli_distribution member(0.4);
    for (std::size_t i = 0; i < n; ++i) {
      ItemSet cover(c.universe_size);
      for (std::size_t u = 0; u < c.universe_size; ++u) {
        if (member(rng)) cover.insert(u);
      }
      c.covers.push_back(std::move(cover));
    }
    const auto report = setfn::check_classes(setfn::SetFunction<Rational>(std::move(c)), config.caps);
    coverage.record(report.submodular && report.monotone, cat("coverage instance ", t));
  }
  coverage.report(r, "random coverage functions are monotone submodular");

  Tally xos, demand, telescoping, basics;
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const auto f = fixtures::random_function(n, rng);
    const Word total = Word{1} << n;
    basics.record(f.value_mask(0) == Rational(0), cat("instance ", t, " f(empty) != 0"));
    if (const auto* x = std::get_if<setfn::XosFn<Rational>>(&f.repr())) {
      for (Word mask = 0; mask < total; ++mask) {
        const Rational v = f.value_mask(mask);
        bool attained = false;
        for (const auto& clause : x->clauses) {
          Rational a(0);
          for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1U) a += clause[i];
          }
          xos.record(v >= a, cat("instance ", t, " mask ", mask));
          attained = attained || a == v;
        }
        xos.record(attained, cat("instance ", t, " mask ", mask, " no clause attains f"));
      }
    }
    std::vector<Rational> prices;
    for (std::size_t i = 0; i < n; ++i) prices.push_back(ratio(std::uniform_int_distribution<int>(0, 40)(rng), 100));
    const ItemSet d = setfn::demand(f, std::span<const Rational>(prices), config.caps);
    const Rational best = f.value(d) - price_of(prices, d);
    for (Word mask = 0; mask < total; ++mask) {
      const ItemSet s = ItemSet::from_mask(n, mask);
      const Rational v = f.value(s);
      basics.record(v >= Rational(0), cat("instance ", t, " negative value at ", s.to_string()));
      demand.record(best >= v - price_of(prices, s), cat("instance ", t, " demand ", d.to_string(), " beaten by ", s.to_string()));
      std::vector<std::size_t> order = s.indices();
      std::shuffle(order.begin(), order.end(), rng);
      ItemSet built(n);
      Rational sum(0);
      for (std::size_t i : order) {
        sum += setfn::marginal(f, i, built);
        built.insert(i);
      }
      telescoping.record(sum == v, cat("instance ", t, " set ", s.to_string()));
    }
  }
  basics.report(r, "values non-negative with f(empty) = 0");
  xos.report(r, "XOS value dominates every clause and equals one");
  demand.report(r, "demand set maximizes surplus");
  telescoping.report(r, "marginals telescope to f(S)");
  return r;
}

SuiteResult multiagent_properties(const VerifyConfig& config) {
  SuiteResult r;
  std::mt19937_64 rng(config.seed ^ 0x9b05688c2b3e6c1fULL);
  Tally equilibrium, tight_exact, tight_real, dominance, self_check;
  std::size_t real_skipped = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    const auto inst = fixtures::random_multiagent(n, rng);
    const multiagent::MultiAgentInstance<double> real(
        [&] {
          std::vector<double> c;
          for (const auto& x : inst.costs) c.push_back(to_double(x));
          return c;
        }(),
        setfn::to_real(inst.f));
    const Word total = Word{1} << n;
    for (Word mask = 1; mask < total; ++mask) {
      const ItemSet s = ItemSet::from_mask(n, mask);
      const auto pays = multiagent::equilibrium_payments(inst, s);
      if (!std::all_of(pays.begin(), pays.end(), [](const auto& p) { return p.is_finite(); })) continue;
      const Rational fs = inst.f.value(s);
      bool positive = true;
      for (std::size_t i : s.indices()) positive = positive && fs > inst.f.value(s.without(i));
      if (!positive) continue;
      std::vector<Rational> alpha;
      for (const auto& p : pays) alpha.push_back(p.value());
      equilibrium.record(multiagent::verify_equilibrium(inst, std::span<const Rational>(alpha), s),
                         cat("instance ", t, " S=", s.to_string()));
      for (std::size_t i : s.indices()) {
        if (alpha[i] == Rational(0)) continue;
        auto lowered = alpha;
        lowered[i] -= alpha[i] / Rational(1000);
        tight_exact.record(!multiagent::verify_equilibrium(inst, std::span<const Rational>(lowered), s),
                           cat("instance ", t, " S=", s.to_string(), " agent ", i + 1));
        const double gain = to_double(fs - inst.f.value(s.without(i)));
        if (gain * 1e-6 <= 2 * kRealTolerance) {
          ++real_skipped;
          continue;
        }
        std::vector<double> real_alpha;
        for (const auto& a : alpha) real_alpha.push_back(to_double(a));
        real_alpha[i] -= 1e-6;
        tight_real.record(!multiagent::verify_equilibrium(real, std::span<const double>(real_alpha), s),
                          cat("instance ", t, " S=", s.to_string(), " agent ", i + 1));
      }
    }
    const auto sol = multiagent::solve_exact(inst, {}, config.caps);
    for (Word mask = 0; mask < total; ++mask) {
      const auto g = multiagent::objective_g(inst, ItemSet::from_mask(n, mask));
      dominance.record(!(sol.objective < g), cat("instance ", t, " mask ", mask));
    }
    std::vector<Rational> own;
    bool finite = true;
    for (const auto& p : sol.payments) {
      finite = finite && p.is_finite();
      own.push_back(p.is_finite() ? p.value() : Rational(0));
    }
    if (finite) {
      self_check.record(multiagent::verify_equilibrium(inst, std::span<const Rational>(own), sol.set),
                        cat("instance ", t, " optimum ", sol.set.to_string()));
    }
  }
  equilibrium.report(r, "equilibrium payments satisfy the incentive constraints");
  tight_exact.report(r, "lowering any payment breaks them (exact)");
  tight_real.report(r, "lowering any payment by 1e-6 breaks them (real)");
  r.checks.back().detail += cat(", ", real_skipped, " skipped where 1e-6 times the marginal is below tolerance");
  dominance.report(r, "solve_exact dominates every set");
  self_check.report(r, "optimum is an equilibrium under its own payments");
  return r;
}

SuiteResult multiaction_properties(const VerifyConfig& config) {
  SuiteResult r;
  std::mt19937_64 rng(config.seed ^ 0x1f83d9abfb41bd6bULL);
  Tally best, routes, envelope;
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    const auto inst = fixtures::random_multiaction(n, rng);
    const multiaction::ActionProfile<Rational> profile(inst, config.caps);
    for (int a = 0; a < 5; ++a) {
      const Rational alpha = ratio(std::uniform_int_distribution<int>(0, 100)(rng), 100);
      const ItemSet s = multiaction::agent_best_response(inst, alpha, config.caps);
      const Rational u = inst.f.value(s) * alpha - [&] {
        Rational c(0);
        for (std::size_t i : s.indices()) c += inst.costs[i];
        return c;
      }();
      for (const auto& p : profile.points()) {
        best.record(u >= p.value * alpha - p.cost, cat("instance ", t, " alpha ", str(alpha)));
      }
      routes.record(profile.best_response(alpha).mask == s.mask(),
                    cat("instance ", t, " alpha ", str(alpha), " scan ", s.to_string()));
    }
    if (n <= config.caps.pairwise) {
      const auto bps = multiaction::breakpoints(inst, config.caps);
      std::vector<Rational> top;
      for (const auto& a : bps) {
        const auto& p = profile.best_response(a);
        top.push_back(p.value * a - p.cost);
      }
      for (std::size_t i = 1; i < bps.size(); ++i) {
        envelope.record(top[i] >= top[i - 1], cat("instance ", t, " decreasing at ", str(bps[i])));
        if (i + 1 < bps.size()) {
          const Rational left = (top[i] - top[i - 1]) / (bps[i] - bps[i - 1]);
          const Rational right = (top[i + 1] - top[i]) / (bps[i + 1] - bps[i]);
          envelope.record(right >= left, cat("instance ", t, " not convex at ", str(bps[i])));
        }
      }
    }
  }
  best.report(r, "best response maximizes agent utility");
  routes.report(r, "direct scan and action profile agree");
  envelope.report(r, "agent envelope non-decreasing and convex");
  return r;
}

SuiteResult gadget_properties(const VerifyConfig& config) {
  SuiteResult r;
  std::mt19937_64 rng(config.seed ^ 0x5be0cd19137e2179ULL);

  {
    const ItemSet good = gadgets::random_good_set(8, rng);
    const auto inst = gadgets::hidden_set_instance<double>(8, good);
    Tally pointwise;
    for (Word mask = 1; mask < 256; ++mask) {
      const ItemSet s = ItemSet::from_mask(8, mask);
      const double root = std::sqrt(2.0);
      const double direct =
          std::max({static_cast<double>((s & good).size()), root, static_cast<double>(s.size()) / root}) / 8;
      pointwise.record(std::fabs(inst.f.value(s) - direct) <= kRealTolerance, cat("S=", s.to_string()));
    }
    pointwise.report(r, "f_G equals the max of its three parts (n=8)");
    const auto classes = setfn::check_classes(inst.f, config.caps);
    r.add("f_G monotone (n=8)", classes.monotone, 0, classes.monotone ? "" : classes.monotone_witness->smaller.to_string());
  }

  Tally opacity;
  for (std::size_t n : {std::size_t{27}, std::size_t{64}, std::size_t{512}}) {
    const std::size_t m = gadgets::cube_root_exact(n);
    const double root = std::sqrt(static_cast<double>(m));
    for (int t = 0; t < 300; ++t) {
      const ItemSet good = gadgets::random_good_set(n, rng);
      const auto inst = gadgets::hidden_set_instance<double>(n, good);
      const std::size_t limit = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(m), 1.5)));
      const std::size_t size = std::uniform_int_distribution<std::size_t>(1, limit)(rng);
      std::vector<std::size_t> idx(n);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::shuffle(idx.begin(), idx.end(), rng);
      const ItemSet s = ItemSet::from_indices(n, std::span<const std::size_t>(idx.data(), size));
      if ((s & good).size() * (s & good).size() > m) continue;
      const double expected = std::max(root, static_cast<double>(size) / root) / static_cast<double>(n);
      opacity.record(std::fabs(inst.f.value(s) - expected) <= kRealTolerance, cat("n=", n, " S=", s.to_string()));
    }
  }
  opacity.report(r, "unsuccessful queries reveal nothing about G");

  Tally witness;
  const auto battery = fixtures::graph_battery(config.seed, 12);
  for (const Graph& g : battery) {
    for (std::size_t delta : {1, 2}) {
      if (g.vertex_count() + delta > 8) continue;
      const auto gadget = gadgets::clique_xos_instance(g, delta, ratio(1, 2));
      const auto& fn = gadget.function();
      const std::size_t n = gadget.augmented.vertex_count();
      for (Word sm = 0; sm < (Word{1} << n); ++sm) {
        const ItemSet s = ItemSet::from_mask(n, sm);
        const Rational fs = gadget.instance.f.value(s);
        for (Word tm = 1; tm < (Word{1} << n); ++tm) {
          const Rational v = gadgets::xos_clause_value(fn, ItemSet::from_mask(n, tm), s);
          witness.record(tm == sm ? v == fs : v <= fs, cat("S mask ", sm, " T mask ", tm, " clause ", str(v), " f ", str(fs)));
        }
      }
    }
  }
  witness.report(r, "clique gadget clauses bound f with equality at T = S");

  Tally realisation;
  const Rational beta = ratio(1, 20);
  for (std::size_t copies = 0; copies <= 4; ++copies) {
    const auto cover = gadgets::planted_cover_coverage(2, copies);
    const auto inst = gadgets::multiaction_submodular_gadget(2, cover.function, beta);
    const setfn::SetFunction<Rational> base(cover.function);
    const std::size_t n = inst.size();
    for (Word mask = 0; mask < (Word{1} << n); ++mask) {
      const Rational direct = (base.value_mask(mask >> 1) + Rational(static_cast<std::int64_t>(mask & 1U))) / Rational(2);
      realisation.record(direct == inst.f.value_mask(mask), cat("copies ", copies, " mask ", mask));
    }
  }
  realisation.report(r, "two-layer coverage realises (f'(S & A') + [0 in S])/2");

  // No two items disjoint, so no pair covers everything.
  setfn::CoverageFn tangled{6, {}};
  for (std::size_t i = 0; i < 6; ++i) {
    ItemSet cover(6);
    cover.insert(0);
    cover.insert(1 + i % 5);
    cover.insert(1 + (i + 2) % 5);
    tangled.covers.push_back(std::move(cover));
  }
  const auto rows = gadgets::coverage_soundness_scan(tangled, 2, 2, 0.05);
  std::size_t within = 0;
  std::string detail;
  for (const auto& row : rows) {
    within += row.within;
    detail += cat("|S|=", row.size, ": max f ", row.best_value, " vs ", row.bound, "; ");
  }
  r.add("soundness scan on a tangled coverage instance (informational)", true, static_cast<double>(within), detail);
  return r;
}

SuiteResult clique_threshold(const VerifyConfig& config) {
  SuiteResult r;
  using cliquereduce::CliqueVerdict;
  Tally flips;
  const Rational nudge = ratio(1, 1000000000);
  for (const Rational& m : {ratio(7, 1), ratio(31, 3), ratio(12, 1), ratio(97, 5)}) {
    const Rational t = m / (m + Rational(1));
    flips.record(cliquereduce::classify(t - nudge, m) == CliqueVerdict::small &&
                     cliquereduce::classify(t, m) == CliqueVerdict::large &&
                     cliquereduce::classify(t + nudge, m) == CliqueVerdict::large,
                 cat("M=", str(m)));
  }
  flips.report(r, "verdict flips exactly at M/(M+1)");

  const auto exact = cliquereduce::exact_oracle();
  r.add("empty graph on 5 vertices, delta=2 gives SMALL",
        cliquereduce::distinguish(Graph(5), 2, ratio(1, 2), exact).verdict == CliqueVerdict::small);
  r.add("K8, delta=1, beta=1/2 gives LARGE",
        cliquereduce::distinguish(Graph::complete(8), 1, ratio(1, 2), exact).verdict == CliqueVerdict::large);

  Tally quality, promise;
  std::size_t smalls = 0, larges = 0;
  const Rational beta = ratio(1, 2);
  const auto degraded = cliquereduce::degraded_oracle(beta);
  for (const Graph& g : fixtures::graph_battery(config.seed)) {
    const std::size_t omega = cliquereduce::max_clique_bruteforce(g, config.caps);
    for (std::size_t delta : {1, 2, 4}) {
      const auto gadget = gadgets::clique_xos_instance(g, delta, beta);
      const Rational alpha = degraded.solve(gadget.instance);
      const auto opt = multiaction::solve_exact(gadget.instance, config.caps);
      const multiaction::ActionProfile<Rational> profile(gadget.instance, config.caps);
      quality.record(profile.principal_utility(alpha) >= beta * opt.principal_utility,
                     cat("omega=", omega, " delta=", delta, " alpha=", str(alpha)));
      const auto res = cliquereduce::distinguish(g, delta, beta, degraded);
      (res.verdict == CliqueVerdict::small ? smalls : larges)++;
      if (omega <= delta) promise.record(res.verdict == CliqueVerdict::small, cat("omega=", omega, " delta=", delta));
      if (Rational(static_cast<std::int64_t>(omega)) * beta * beta >= Rational(2 * static_cast<std::int64_t>(delta))) {
        promise.record(res.verdict == CliqueVerdict::large, cat("omega=", omega, " delta=", delta));
      }
    }
  }
  quality.report(r, "degraded oracle still meets its declared beta");
  promise.report(r, "degraded oracle respects both promise directions");
  r.add("degraded oracle exercises both verdicts", smalls > 0 && larges > 0, static_cast<double>(larges),
        cat(smalls, " SMALL, ", larges, " LARGE"));
  return r;
}

}  // namespace contractlab::verify
