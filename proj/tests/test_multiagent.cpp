#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "contractlab/errors.hpp"
#include "contractlab/gadgets.hpp"
#include "contractlab/multiagent.hpp"
#include "support.hpp"

using namespace contractlab;
using namespace contractlab::multiagent;
using contractlab::testing::Q;
using contractlab::testing::S;

namespace {

// v = (0.3, 0.5), c = (0.06, 0.10).
MultiAgentInstance<Rational> e1() {
  return {{Q(3, 50), Q(1, 10)}, SetFunction<Rational>(setfn::AdditiveFn<Rational>{{Q(3, 10), Q(1, 2)}})};
}

std::vector<Rational> finite(const std::vector<Extended<Rational>>& xs) {
  std::vector<Rational> out;
  for (const auto& x : xs) out.push_back(x.value());
  return out;
}

}  // namespace

TEST(MultiAgentPayments, AdditiveExample) {
  const auto pay = equilibrium_payments(e1(), S(2, {1, 2}));
  ASSERT_EQ(pay.size(), 2u);
  EXPECT_EQ(pay[0], Extended<Rational>(Q(1, 5)));
  EXPECT_EQ(pay[1], Extended<Rational>(Q(1, 5)));
}

TEST(MultiAgentPayments, ZeroOutsideTheSet) {
  const auto pay = equilibrium_payments(e1(), S(2, {2}));
  EXPECT_EQ(pay[0], Extended<Rational>(Q(0)));
  EXPECT_EQ(pay[1], Extended<Rational>(Q(1, 5)));
}

TEST(MultiAgentPayments, ZeroCosts) {
  const MultiAgentInstance<Rational> inst({Q(0), Q(0)}, e1().f);
  for (const auto& p : equilibrium_payments(inst, S(2, {1, 2}))) EXPECT_EQ(p, Extended<Rational>(Q(0)));
}

TEST(MultiAgentPayments, ZeroMarginalWithPositiveCostIsInfinite) {
  setfn::CoverageFn c{1, {S(1, {1}), S(1, {1})}};
  const MultiAgentInstance<Rational> inst({Q(1, 10), Q(1, 10)}, SetFunction<Rational>(std::move(c)));
  const auto pay = equilibrium_payments(inst, S(2, {1, 2}));
  EXPECT_TRUE(pay[0].is_plus_infinity());
  EXPECT_TRUE(objective_g(inst, S(2, {1, 2})).is_minus_infinity());
}

TEST(MultiAgentPayments, HiddenSetAtGoodSet) {
  const auto inst = gadgets::hidden_set_instance<double>(8, S(8, {1, 2}));
  // f(G) = 2/8 and f(G - i) = sqrt(2)/8, so each payment is (1/32) / ((2 - sqrt(2))/8).
  const double expected = (1.0 / 32.0) / ((2.0 - std::sqrt(2.0)) / 8.0);
  const auto pay = equilibrium_payments(inst, S(8, {1, 2}));
  EXPECT_NEAR(pay[0].value(), expected, 1e-12);
  EXPECT_NEAR(pay[1].value(), expected, 1e-12);
  EXPECT_NEAR(expected, 0.4267766953, 1e-9);
}

TEST(MultiAgentObjective, Examples) {
  EXPECT_EQ(objective_g(e1(), S(2, {1, 2})), Extended<Rational>(Q(12, 25)));
  EXPECT_EQ(objective_g(e1(), ItemSet(2)), Extended<Rational>(Q(0)));
}

TEST(MultiAgentObjective, HiddenSetAtGoodSet) {
  // n = 27: f(G) = 3/27, f(G - i) = 2/27, c = 1/162, so g(G) = (1 - 3 (1/162) 27) 3/27 = 1/18.
  const auto exact = gadgets::hidden_set_instance<Rational>(27, S(27, {1, 2, 3}));
  EXPECT_EQ(objective_g(exact, S(27, {1, 2, 3})), Extended<Rational>(Q(1, 18)));

  // n = 8: f(G - i) = sqrt(2)/8 since sqrt(m) beats the single remaining good item.
  const auto inst8 = gadgets::hidden_set_instance<double>(8, S(8, {1, 2}));
  const double f8 = 2.0 / 8.0;
  const double m8 = f8 - std::sqrt(2.0) / 8.0;
  const double expected = (1.0 - 2.0 * (1.0 / 32.0) / m8) * f8;
  EXPECT_NEAR(objective_g(inst8, S(8, {1, 2})).value(), expected, 1e-12);
  EXPECT_NEAR(expected, 0.0366116524, 1e-9);
}

TEST(MultiAgentVerify, Examples) {
  const auto inst = e1();
  const std::vector<Rational> tight{Q(1, 5), Q(1, 5)};
  EXPECT_TRUE(verify_equilibrium(inst, std::span<const Rational>(tight), S(2, {1, 2})));
  const std::vector<Rational> low{Q(1, 10), Q(1, 5)};
  EXPECT_FALSE(verify_equilibrium(inst, std::span<const Rational>(low), S(2, {1, 2})));
  const std::vector<Rational> zero{Q(0), Q(0)};
  EXPECT_TRUE(verify_equilibrium(inst, std::span<const Rational>(zero), ItemSet(2)));
}

TEST(MultiAgentSolve, AdditiveExample) {
  const auto sol = solve_exact(e1());
  EXPECT_EQ(sol.set, S(2, {1, 2}));
  EXPECT_EQ(sol.objective, Extended<Rational>(Q(12, 25)));
  EXPECT_EQ(finite(sol.payments), (std::vector<Rational>{Q(1, 5), Q(1, 5)}));
}

TEST(MultiAgentSolve, ExpensiveAgentsGiveEmptySet) {
  const MultiAgentInstance<Rational> inst({Q(1), Q(1)}, e1().f);
  const auto sol = solve_exact(inst);
  EXPECT_EQ(sol.set, ItemSet(2));
  EXPECT_EQ(sol.objective, Extended<Rational>(Q(0)));
}

TEST(MultiAgentSolve, MatchesBruteForceOnRandomAdditive) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> w(0, 20);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 6;
    std::vector<Rational> weights, costs;
    for (std::size_t i = 0; i < n; ++i) {
      weights.push_back(Q(w(rng), 100));
      costs.push_back(Q(w(rng), 1000));
    }
    const MultiAgentInstance<Rational> inst(costs, SetFunction<Rational>(setfn::AdditiveFn<Rational>{weights}));
    // Independent oracle: g(S) = (1 - sum_{i in S} c_i / v_i) v(S), -inf when some v_i = 0 < c_i.
    std::optional<Rational> best;
    for (Word mask = 0; mask < (Word{1} << n); ++mask) {
      Rational share(0), value(0);
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (!((mask >> i) & 1U)) continue;
        value += weights[i];
        if (weights[i] == Q(0)) {
          ok = ok && costs[i] == Q(0);
        } else {
          share += costs[i] / weights[i];
        }
      }
      if (!ok) continue;
      const Rational g = (Q(1) - share) * value;
      if (!best || g > *best) best = g;
    }
    const auto sol = solve_exact(inst);
    ASSERT_TRUE(sol.objective.is_finite());
    EXPECT_EQ(sol.objective.value(), *best) << "instance " << t;
  }
}

TEST(MultiAgentSolve, SizeCapRestrictsTheScan) {
  const auto sol = solve_exact(e1(), std::size_t{1});
  EXPECT_LE(sol.set.size(), 1u);
  // {2}: (1 - 0.2) 0.5 = 0.4 beats {1}: (1 - 0.2) 0.3.
  EXPECT_EQ(sol.set, S(2, {2}));
  EXPECT_EQ(sol.objective, Extended<Rational>(Q(2, 5)));
}

TEST(MultiAgentSolve, CapExceeded) {
  Caps caps;
  caps.enumerate = 1;
  EXPECT_THROW(solve_exact(e1(), {}, caps), CapExceeded);
}

TEST(MultiAgentInstanceCheck, DimensionMismatch) {
  EXPECT_THROW(MultiAgentInstance<Rational>({Q(1)}, e1().f), DimensionError);
}

TEST(MultiAgentPtas, CandidateFamilyCount) {
  EXPECT_EQ(ptas_candidate_family(6, 1.0).size(), 26u);
  // eps >= 2: all sets of size <= 1 plus the prefixes of length 2..n.
  EXPECT_EQ(ptas_candidate_family(6, 2.0).size(), 1u + 6u + 5u);
}

TEST(MultiAgentPtas, SymmetricProfileIsExact) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 3 + t % 6;
    const auto r = gadgets::random_pseudo_symmetric(n, true, rng);
    const MultiAgentInstance<Rational> inst(r.costs, pseudo_symmetric_function(r.spec));
    const auto exact = solve_exact(inst);
    for (double eps : {0.25, 0.5, 0.9}) {
      EXPECT_EQ(solve_ptas_pseudosymmetric(r.spec, r.costs, eps).objective, exact.objective) << "n=" << n;
    }
  }
}

TEST(MultiAgentPtas, RejectsInvalidSpec) {
  // Not submodular: the profile is convex.
  PseudoSymmetricSpec<Rational> spec{{Q(0), Q(1, 10), Q(1, 2), Q(1)}, S(3, {1}), Q(0)};
  EXPECT_THROW(pseudo_symmetric_function(spec), InvalidArgument);
}
