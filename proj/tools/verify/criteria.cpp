#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/hypergeometric.hpp>

#include "contractlab/cliquereduce.hpp"
#include "contractlab/errors.hpp"
#include "contractlab/gadgets.hpp"
#include "contractlab/kprover.hpp"
#include "contractlab/verify.hpp"
#include "fixtures.hpp"
#include "report.hpp"

namespace contractlab::verify {

using detail::cat;
using detail::str;
using detail::Tally;
using fixtures::ratio;
using multiaction::ActionProfile;

__extension__ using Wide = __int128;

namespace {

ItemSet random_subset(std::size_t n, std::size_t size, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  return ItemSet::from_indices(n, std::span<const std::size_t>(idx.data(), size));
}

Rational uniform_fraction(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(1, 999);
  return ratio(u(rng), 1000);
}

long long to_ll(const BigInt& x) {
  if (x > BigInt(std::numeric_limits<long long>::max()) || x < BigInt(std::numeric_limits<long long>::min())) {
    throw CapExceeded("scaled grid value does not fit in 64 bits");
  }
  return x.convert_to<long long>();
}

}  // namespace

SuiteResult hidden_set_formula(const VerifyConfig& config) {
  SuiteResult r;
  for (std::size_t n : {std::size_t{8}, std::size_t{27}}) {
    std::mt19937_64 rng(config.seed + n);
    const std::size_t m = gadgets::cube_root_exact(n);
    const ItemSet good = gadgets::random_good_set(n, rng);
    const Rational expected = ratio(static_cast<std::int64_t>(m), static_cast<std::int64_t>(2 * n));
    const double real_g = multiagent::objective_g(gadgets::hidden_set_instance<double>(n, good), good).as_double();
    try {
      const auto g = multiagent::objective_g(gadgets::hidden_set_instance<Rational>(n, good), good);
      const bool ok = g.is_finite() && g.value() == expected;
      r.add(cat("g(G)=m/(2n) at n=", n), ok, real_g,
            cat("exact g(G) = ", g.is_finite() ? str(g.value()) : "-inf", ", m/(2n) = ", str(expected)));
    } catch (const IrrationalValue& e) {
      r.add(cat("g(G)=m/(2n) at n=", n), false, real_g,
            cat("no exact value (", e.what(), "); real-mode g(G) = ", real_g, " vs m/(2n) = ", to_double(expected)));
    }
  }
  return r;
}

SuiteResult hidden_set_unsuccessful_bound(const VerifyConfig& config) {
  SuiteResult r;
  constexpr std::size_t n = 64;
  const std::size_t m = gadgets::cube_root_exact(n);
  std::mt19937_64 rng(config.seed);
  const ItemSet good = gadgets::random_good_set(n, rng);
  const auto inst = gadgets::hidden_set_instance<double>(n, good);
  const double g_good = multiagent::objective_g(inst, good).as_double();
  const double bound = 4 * g_good / std::sqrt(static_cast<double>(m));
  r.add("bound 4 g(G)/sqrt(m)", std::fabs(bound - 0.0625) <= kRealTolerance, bound, cat("g(G) = ", g_good));

  Tally tally;
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t unsuccessful = 0;
  auto check = [&](const ItemSet& s) {
    if (gadgets::is_successful_query(n, good, s)) return;
    ++unsuccessful;
    const double g = multiagent::objective_g(inst, s).as_double();
    worst = std::max(worst, g);
    tally.record(g <= bound + kRealTolerance, cat("S = ", s.to_string(), " has g = ", g));
  };
  check(ItemSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    check(ItemSet::from_indices(n, std::vector<std::size_t>{i}));
    for (std::size_t j = i + 1; j < n; ++j) check(ItemSet::from_indices(n, std::vector<std::size_t>{i, j}));
  }
  const auto good_idx = good.indices();
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (!good.contains(i)) rest.push_back(i);
  }
  std::uniform_int_distribution<std::size_t> size(0, n);
  std::uniform_int_distribution<std::size_t> from_good(0, m);
  std::bernoulli_distribution biased(0.5);
  for (std::size_t t = 0; t < config.trials; ++t) {
    if (!biased(rng)) {
      check(random_subset(n, size(rng), rng));
      continue;
    }
    // Mix a chosen number of good agents with random others.
    const ItemSet a = random_subset(m, from_good(rng), rng);
    const ItemSet b = random_subset(rest.size(), std::uniform_int_distribution<std::size_t>(0, 12)(rng), rng);
    ItemSet s(n);
    for (std::size_t i : a.indices()) s.insert(good_idx[i]);
    for (std::size_t i : b.indices()) s.insert(rest[i]);
    check(s);
  }
  tally.report(r, "unsuccessful S has g(S) <= 0.0625");
  r.add("largest g over unsuccessful sets", worst <= bound + kRealTolerance, worst,
        cat(unsuccessful, " unsuccessful sets scanned"));
  return r;
}

SuiteResult clique_best_response(const VerifyConfig& config) {
  SuiteResult r;
  std::mt19937_64 rng(config.seed ^ 0x6a09e667f3bcc908ULL);
  Tally response, closed_form, routes;
  const auto battery = fixtures::graph_battery(config.seed);
  for (std::size_t gi = 0; gi < battery.size(); ++gi) {
    for (std::size_t delta : {1, 2, 4}) {
      for (const Rational& beta : {ratio(1, 4), ratio(1, 2)}) {
        const auto gadget = gadgets::clique_xos_instance(battery[gi], delta, beta);
        const ActionProfile<Rational> profile(gadget.instance, config.caps);
        const Rational& m = gadget.big_m;
        const Rational& eps = gadget.epsilon;
        const Rational lo = m / (m + Rational(1) + eps);
        const Rational hi = m / (m + Rational(1));
        const std::size_t omega = cliquereduce::max_clique_bruteforce(gadget.augmented, config.caps);
        const Rational d(static_cast<std::int64_t>(delta));
        const Rational w(static_cast<std::int64_t>(omega));
        const std::size_t n = gadget.augmented.vertex_count();

        for (int range = 0; range < 3; ++range) {
          for (int sample = 0; sample < 5; ++sample) {
            Rational alpha;
            if (range == 0) {
              alpha = lo * uniform_fraction(rng);
            } else {
              const Rational& a = range == 1 ? lo : hi;
              const Rational& b = range == 1 ? hi : Rational(1);
              alpha = sample == 0 ? a : a + (b - a) * uniform_fraction(rng);
            }
            const auto& point = profile.best_response(alpha);
            const ItemSet s = ItemSet::from_mask(n, point.mask);
            const std::string where = cat("graph ", gi, " delta=", delta, " beta=", str(beta), " alpha=", str(alpha),
                                          " response ", s.to_string());
            bool ok = false;
            Rational expected(0);
            if (range == 0) {
              ok = s.empty();
            } else if (range == 1) {
              ok = s.size() == delta && gadget.augmented.is_clique(s);
              expected = (m + Rational(1) + eps) * d * (Rational(1) - alpha);
            } else {
              ok = s.size() == omega && gadget.augmented.is_clique(s);
              expected = ((m + Rational(1)) * w + d * eps) * (Rational(1) - alpha);
            }
            response.record(ok, where);
            routes.record(multiaction::agent_best_response(gadget.instance, alpha, config.caps) == s, where);
            const Rational u = profile.principal_utility(alpha);
            closed_form.record(u == expected, cat(where, " u_P=", str(u), " expected ", str(expected)));
          }
        }
      }
    }
  }
  response.report(r, "best response matches the three ranges");
  closed_form.report(r, "principal utility matches closed forms");
  routes.report(r, "action profile and direct subset scan agree");
  return r;
}

SuiteResult clique_approximation(const VerifyConfig& config) {
  SuiteResult r;
  const auto oracle = cliquereduce::exact_oracle();
  Tally small_side, large_side, approx;
  const auto battery = fixtures::graph_battery(config.seed);
  for (std::size_t gi = 0; gi < battery.size(); ++gi) {
    const Graph& g = battery[gi];
    const std::size_t omega = cliquereduce::max_clique_bruteforce(g, config.caps);
    const Rational w(static_cast<std::int64_t>(omega));
    for (const Rational& beta : {ratio(1, 4), ratio(1, 2)}) {
      for (std::size_t delta : {1, 2, 4}) {
        const Rational d(static_cast<std::int64_t>(delta));
        const bool promised_small = omega <= delta;
        const bool promised_large = w * beta * beta >= Rational(2) * d;
        if (!promised_small && !promised_large) continue;
        const auto res = cliquereduce::distinguish(g, delta, beta, oracle);
        const std::string where = cat("graph ", gi, " omega=", omega, " delta=", delta, " beta=", str(beta),
                                      " alpha0=", str(res.alpha), " verdict ", cliquereduce::to_string(res.verdict));
        if (promised_small) small_side.record(res.verdict == cliquereduce::CliqueVerdict::small, where);
        if (promised_large) large_side.record(res.verdict == cliquereduce::CliqueVerdict::large, where);
      }
      const auto est = cliquereduce::approx_clique(g, beta, oracle);
      const Rational e(static_cast<std::int64_t>(est.estimate));
      approx.record(beta * beta * w <= Rational(4) * e && est.estimate <= omega,
                    cat("graph ", gi, " omega=", omega, " beta=", str(beta), " estimate=", est.estimate));
    }
  }
  small_side.report(r, "omega <= delta gives SMALL");
  large_side.report(r, "omega >= 2 delta/beta^2 gives LARGE");

  // The random battery rarely reaches omega >= 8, so the LARGE side also runs on dense graphs.
  Tally dense;
  std::mt19937_64 rng(config.seed ^ 0x3c6ef372fe94f82bULL);
  std::vector<Graph> extra = {Graph::complete(8), Graph::complete(9)};
  for (int t = 0; t < 4; ++t) {
    // Clique on 0..7 plus a ninth vertex with random neighbours; t = 0 leaves it isolated.
    Graph g = t == 0 ? Graph(9) : Graph::random(9, 0.5, rng);
    for (std::size_t u = 0; u < 8; ++u) {
      for (std::size_t v = u + 1; v < 8; ++v) g.add_edge(u, v);
    }
    extra.push_back(std::move(g));
  }
  for (std::size_t gi = 0; gi < extra.size(); ++gi) {
    const std::size_t omega = cliquereduce::max_clique_bruteforce(extra[gi], config.caps);
    const auto res = cliquereduce::distinguish(extra[gi], 1, ratio(1, 2), oracle);
    dense.record(omega >= 8 && res.verdict == cliquereduce::CliqueVerdict::large,
                 cat("dense graph ", gi, " omega=", omega, " alpha0=", str(res.alpha)));
  }
  dense.report(r, "LARGE side on dense graphs outside the battery (delta=1, beta=1/2)");
  approx.report(r, "estimate within [beta^2 omega/4, omega]");
  return r;
}

SuiteResult planted_cover_multiagent(const VerifyConfig& config) {
  SuiteResult r;
  Tally optimum, footnote;
  for (std::size_t k : {2, 3}) {
    for (std::size_t copies = 0; k * (copies + 1) <= 12; ++copies) {
      const auto cover = gadgets::planted_cover_coverage(k, copies);
      const auto inst = gadgets::multiagent_submodular_gadget(k, cover.function);
      const auto sol = multiagent::solve_exact(inst, {}, config.caps);
      optimum.record(sol.objective == Extended<Rational>(ratio(1, 2)),
                     cat("k=", k, " copies=", copies, " g*=", sol.objective.is_finite() ? str(sol.objective.value()) : "-inf",
                         " at ", sol.set.to_string()));
      const std::size_t n = inst.size();
      const Rational kk(static_cast<std::int64_t>(k));
      for (Word mask = 0; mask < (Word{1} << n); ++mask) {
        const ItemSet t = ItemSet::from_mask(n, mask);
        const Rational size(static_cast<std::int64_t>(t.size()));
        const Rational bound = (Rational(1) - size / (Rational(2) * kk)) * size / kk;
        const auto g = multiagent::objective_g(inst, t);
        footnote.record(!(Extended<Rational>(bound) < g),
                        cat("k=", k, " copies=", copies, " T=", t.to_string(), " g=",
                            g.is_finite() ? str(g.value()) : "-inf", " bound=", str(bound)));
      }
    }
  }
  optimum.report(r, "optimal objective is exactly 1/2");
  footnote.report(r, "g(T) <= (1 - |T|/2k)|T|/k for all T");
  return r;
}

SuiteResult planted_cover_multiaction(const VerifyConfig& config) {
  SuiteResult r;
  const Rational beta = ratio(1, 20);
  const Rational ceiling = Rational(1) - beta * beta * beta;
  const Rational probe = Rational(1) - beta * beta;
  Tally below, half, routes;
  for (std::size_t copies = 0; copies <= 4; ++copies) {
    const auto cover = gadgets::planted_cover_coverage(2, copies);
    const auto inst = gadgets::multiaction_submodular_gadget(2, cover.function, beta);
    const auto sol = multiaction::solve_exact(inst, config.caps);
    below.record(sol.alpha < ceiling, cat("copies=", copies, " alpha*=", str(sol.alpha)));
    const ActionProfile<Rational> profile(inst, config.caps);
    const auto& br = profile.best_response(probe);
    half.record(br.value >= ratio(1, 2), cat("copies=", copies, " f(S_alpha)=", str(br.value)));
    const auto alt = multiaction::solve_over_breakpoints(inst, config.caps);
    routes.record(alt.alpha == sol.alpha && alt.principal_utility == sol.principal_utility,
                  cat("copies=", copies, " envelope alpha ", str(sol.alpha), " vs pairwise ", str(alt.alpha)));
  }
  below.report(r, "optimal alpha below 1 - beta^3");
  half.report(r, "best response at 1 - beta^2 has f >= 1/2");
  routes.report(r, "envelope and pairwise solvers agree");
  return r;
}

SuiteResult ptas_pseudosymmetric(const VerifyConfig& config) {
  SuiteResult r;
  std::mt19937_64 rng(config.seed ^ 0xbb67ae8584caa73bULL);
  std::uniform_int_distribution<std::size_t> size(2, 12);
  Tally guarantee, symmetric;
  for (std::size_t t = 0; t < 100; ++t) {
    auto sample = gadgets::random_pseudo_symmetric(size(rng), false, rng);
    for (bool sym : {false, true}) {
      if (sym) sample.spec.bonus = Rational(0);
      const multiagent::MultiAgentInstance<Rational> inst(sample.costs,
                                                          multiagent::pseudo_symmetric_function(sample.spec));
      const auto exact = multiagent::solve_exact(inst, {}, config.caps);
      for (double eps : {0.25, 0.5}) {
        const auto approx = multiagent::solve_ptas_pseudosymmetric(sample.spec, sample.costs, eps);
        const std::string where = cat("instance ", t, sym ? " (v=0)" : "", " eps=", eps, " ptas ",
                                      approx.objective.is_finite() ? str(approx.objective.value()) : "-inf", " exact ",
                                      str(exact.objective.value()));
        const Rational factor = Rational(1) - rational_from_decimal(eps);
        guarantee.record(approx.objective.is_finite() && approx.objective.value() >= factor * exact.objective.value(),
                         where);
        if (sym) symmetric.record(approx.objective == exact.objective, where);
      }
    }
  }
  guarantee.report(r, "g(PTAS) >= (1 - eps) g*");
  symmetric.report(r, "v = 0 gives the exact optimum");
  return r;
}

SuiteResult kprover_toy(const VerifyConfig& config) {
  SuiteResult r;
  const auto cov = kprover::kprover_coverage(kprover::toy_formula(), kprover::KProverParams::greedy(2, 2));
  r.add("k' = 30", cov.k_prime == 30, static_cast<double>(cov.k_prime));
  r.add("|U| = 3600", cov.coverage.universe_size == 3600, static_cast<double>(cov.coverage.universe_size),
        cat("|Q|=", cov.question_count, " |R|=", cov.randomness_count, " L=", cov.big_l, " items=", cov.items.size()));
  const setfn::SetFunction<Rational> f(cov.coverage);
  Tally singles;
  for (std::size_t i = 0; i < cov.items.size(); ++i) {
    const Rational v = f.value(ItemSet::from_indices(cov.items.size(), std::vector<std::size_t>{i}));
    singles.record(v == ratio(1, static_cast<std::int64_t>(cov.k_prime)), cat("item ", i + 1, " f=", str(v)));
  }
  singles.report(r, "f({item}) = 1/k'");
  const ItemSet planted = kprover::planted_assignment_set(cov, std::vector<bool>(3, true));
  const Rational fp = f.value(planted);
  r.add("planted assignment: |S| = k' and f(S) = 1", planted.size() == cov.k_prime && fp == Rational(1),
        static_cast<double>(planted.size()), cat("f(S) = ", str(fp)));
  const auto claims = kprover::verify_block_claims(cov, 200, config.seed);
  r.add("union over provers equals U_r", claims.passed && claims.union_checks == 200,
        static_cast<double>(claims.union_checks), claims.witness);
  r.add("partial unions have the predicted size", claims.passed && claims.family_checks == 200,
        static_cast<double>(claims.family_checks), claims.witness);
  return r;
}

SuiteResult multiaction_grid_oracle(const VerifyConfig& config) {
  SuiteResult r;
  constexpr long long kGrid = 10000;
  std::mt19937_64 rng(config.seed ^ 0x3c6ef372fe94f82bULL);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  Tally dominates, coincide, gap, routes;
  std::size_t coincidences = 0;
  for (std::size_t t = 0; t < 200; ++t) {
    const auto inst = fixtures::random_multiaction(size(rng), rng);
    const ActionProfile<Rational> profile(inst, config.caps);
    const auto sol = multiaction::solve_exact(inst, config.caps);
    const auto alt = multiaction::solve_over_breakpoints(inst, config.caps);
    routes.record(sol.alpha == alt.alpha && sol.principal_utility == alt.principal_utility,
                  cat("instance ", t, " envelope ", str(sol.alpha), " pairwise ", str(alt.alpha)));
    const auto bps = multiaction::breakpoints(inst, config.caps);

    // Integer-scaled oracle: values and costs times the lcm D of all denominators.
    BigInt d = 1;
    for (const auto& p : profile.points()) {
      d = boost::multiprecision::lcm(d, p.value.denominator());
      d = boost::multiprecision::lcm(d, p.cost.denominator());
    }
    std::vector<std::pair<long long, long long>> lines;
    long long f_max = 0;
    for (const auto& p : profile.points()) {
      lines.emplace_back(to_ll(p.value.numerator() * (d / p.value.denominator())),
                         to_ll(p.cost.numerator() * (d / p.cost.denominator())));
      f_max = std::max(f_max, lines.back().first);
    }
    const Rational& best = sol.principal_utility;
    const BigInt scale = BigInt(kGrid) * d;
    Wide grid_max = 0;
    bool all_below = true;
    std::string first_bad;
    for (long long step = 0; step < kGrid; ++step) {
      Wide top_u = 0, top_f = -1;
      for (const auto& [fv, cv] : lines) {
        const Wide u = static_cast<Wide>(fv) * step - static_cast<Wide>(cv) * kGrid;
        if (top_f < 0 || u > top_u || (u == top_u && fv > top_f)) {
          top_u = u;
          top_f = fv;
        }
      }
      const Wide v = top_f * (kGrid - step);  // u_P in units of 1/(kGrid D)
      grid_max = std::max(grid_max, v);
      const Rational grid_value(BigInt(static_cast<long long>(v)), scale);
      if (grid_value > best && all_below) {
        all_below = false;
        first_bad = cat("instance ", t, " alpha=", step, "/", kGrid, " grid u_P ", str(grid_value), " > ", str(best));
      }
      const Rational alpha = ratio(step, kGrid);
      if (std::binary_search(bps.begin(), bps.end(), alpha)) {
        ++coincidences;
        const Rational direct = profile.principal_utility(alpha);
        coincide.record(direct == grid_value,
                        cat("instance ", t, " alpha=", str(alpha), " grid ", str(grid_value), " direct ", str(direct)));
      }
    }
    dominates.record(all_below, first_bad);
    const Rational grid_best(BigInt(static_cast<long long>(grid_max)), scale);
    const Rational allowed(BigInt(f_max), scale);
    gap.record(best - grid_best <= allowed,
               cat("instance ", t, " optimum ", str(best), " grid max ", str(grid_best)));
  }
  dominates.report(r, "breakpoint optimum >= every grid value");
  coincide.report(r, "exact agreement at grid points that are breakpoints");
  gap.report(r, "grid maximum within f_max/10^4 of the optimum");
  routes.report(r, "envelope and pairwise solvers agree");
  r.checks[1].detail += cat(" (", coincidences, " coinciding grid points)");
  return r;
}

SuiteResult analytic_inequalities(const VerifyConfig&) {
  SuiteResult r;
  double worst = -1, worst_x = 0, slack = std::numeric_limits<double>::infinity(), slack_x = 0;
  for (int t = 0; t <= 20000; ++t) {
    const double x = t * 1e-4;
    const double v = (1 - x / 2) * (-std::expm1(-x) + 0.01);
    if (v > worst) {
      worst = v;
      worst_x = x;
    }
    const double s = std::expm1(-x) + x - x * x / 4;
    if (s < slack) {
      slack = s;
      slack_x = x;
    }
  }
  r.add("max (1-x/2)(1-e^-x+0.01) < 0.35 on [0,2]", worst < 0.35, worst,
        cat("max at x=", worst_x, ", margin ", 0.35 - worst));
  r.add("e^-x >= 1-x+x^2/4 on [0,2]", slack >= 0, slack, cat("smallest gap at x=", slack_x));
  return r;
}

SuccessEstimate estimate_success(std::size_t n, std::size_t set_size, std::size_t trials, std::uint64_t seed) {
  SuccessEstimate e;
  e.n = n;
  e.m = gadgets::cube_root_exact(n);
  if (set_size > n) throw InvalidArgument("set size exceeds n");
  e.set_size = set_size;
  e.trials = trials;
  e.bound = std::exp(-std::sqrt(static_cast<double>(e.m)) / 4);
  e.bound_claimed = n >= 512;
  std::vector<std::size_t> first(set_size);
  std::iota(first.begin(), first.end(), std::size_t{0});
  const ItemSet s = ItemSet::from_indices(n, first);
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    if (gadgets::is_successful_query(n, gadgets::random_good_set(n, rng), s)) ++e.successes;
  }
  e.rate = trials == 0 ? 0.0 : static_cast<double>(e.successes) / static_cast<double>(trials);
  e.stderr_ = trials == 0 ? 0.0 : std::sqrt(e.rate * (1 - e.rate) / static_cast<double>(trials));
  if (set_size * set_size <= e.m * e.m * e.m && set_size > 0) {
    auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(e.m)));
    while ((root + 1) * (root + 1) <= e.m) ++root;
    while (root * root > e.m) --root;
    const boost::math::hypergeometric_distribution<double> dist(e.m, set_size, n);
    e.exact_tail = root >= std::min(set_size, e.m) ? 0.0 : boost::math::cdf(boost::math::complement(dist, root));
  }
  return e;
}

SuiteResult hidden_set_monte_carlo(const VerifyConfig& config) {
  SuiteResult r;
  const auto e = estimate_success(512, 22, config.trials, config.seed);
  r.add("successful-query rate <= e^{-sqrt(8)/4}", e.rate <= e.bound, e.rate,
        cat(e.successes, "/", e.trials, " successes, stderr ", e.stderr_, ", bound ", e.bound, ", exact tail ",
            e.exact_tail));
  return r;
}

}  // namespace contractlab::verify
