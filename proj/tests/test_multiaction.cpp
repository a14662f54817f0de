#include <random>

#include <gtest/gtest.h>

#include "contractlab/errors.hpp"
#include "contractlab/gadgets.hpp"
#include "contractlab/multiaction.hpp"
#include "support.hpp"

using namespace contractlab;
using namespace contractlab::multiaction;
using contractlab::testing::Q;
using contractlab::testing::S;

namespace {

// v = (0.4, 0.4), c = (0.1, 0.1).
MultiActionInstance<Rational> twin() {
  return {{Q(1, 10), Q(1, 10)}, SetFunction<Rational>(setfn::AdditiveFn<Rational>{{Q(2, 5), Q(2, 5)}})};
}

Graph triangle() { return Graph::complete(3); }

}  // namespace

TEST(MultiActionBestResponse, AdditiveExamples) {
  EXPECT_EQ(agent_best_response(twin(), Q(1, 5)), ItemSet(2));
  // Every set has utility 0 at 1/4; the tie goes to the largest f.
  EXPECT_EQ(agent_best_response(twin(), Q(1, 4)), S(2, {1, 2}));
}

TEST(MultiActionBestResponse, SmallestMaskBreaksFullTies) {
  // f({1}) = f({2}) = f({1,2}) = 2/5. At alpha = 1/4, {}, {1} and {2} all have
  // utility 0; {1} and {2} tie on f as well.
  const MultiActionInstance<Rational> inst(
      {Q(1, 10), Q(1, 10)}, SetFunction<Rational>(setfn::XosFn<Rational>{{{Q(2, 5), Q(0)}, {Q(0), Q(2, 5)}}}));
  EXPECT_EQ(agent_best_response(inst, Q(1, 4)), S(2, {1}));
}

TEST(MultiActionBestResponse, CliqueGadgetMaximumClique) {
  const auto g = gadgets::clique_xos_instance(triangle(), 1, Q(1, 2));
  const ItemSet br = agent_best_response(g.instance, Q(7, 8));
  EXPECT_EQ(br.size(), 3u);
  EXPECT_TRUE(g.augmented.is_clique(br));
}

TEST(MultiActionBreakpoints, AdditiveExample) {
  EXPECT_EQ(breakpoints(twin()), (std::vector<Rational>{Q(0), Q(1, 4), Q(1)}));
}

TEST(MultiActionBreakpoints, SingleAction) {
  const MultiActionInstance<Rational> inst({Q(1, 5)}, SetFunction<Rational>(setfn::AdditiveFn<Rational>{{Q(1, 2)}}));
  EXPECT_EQ(breakpoints(inst), (std::vector<Rational>{Q(0), Q(2, 5), Q(1)}));
  const MultiActionInstance<Rational> dear({Q(3, 5)}, SetFunction<Rational>(setfn::AdditiveFn<Rational>{{Q(1, 2)}}));
  EXPECT_EQ(breakpoints(dear), (std::vector<Rational>{Q(0), Q(1)}));
}

TEST(MultiActionBreakpoints, CliqueGadgetEndpoints) {
  const auto g = gadgets::clique_xos_instance(triangle(), 1, Q(1, 2));
  const auto bps = breakpoints(g.instance);
  EXPECT_TRUE(std::binary_search(bps.begin(), bps.end(), Q(7, 11)));
  EXPECT_TRUE(std::binary_search(bps.begin(), bps.end(), Q(7, 8)));
}

TEST(MultiActionSolve, AdditiveExample) {
  const auto sol = solve_exact(twin());
  EXPECT_EQ(sol.alpha, Q(1, 4));
  EXPECT_EQ(sol.best_response, S(2, {1, 2}));
  EXPECT_EQ(sol.principal_utility, Q(3, 5));
}

TEST(MultiActionSolve, CliqueGadget) {
  const auto g = gadgets::clique_xos_instance(triangle(), 1, Q(1, 2));
  const auto sol = solve_exact(g.instance);
  EXPECT_EQ(sol.alpha, Q(7, 11));
  EXPECT_EQ(sol.principal_utility, Q(4));
}

TEST(MultiActionSolve, RoutesAgreeOnRandomInstances) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> w(0, 30);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 7;
    std::vector<std::vector<Rational>> clauses(2);
    std::vector<Rational> costs;
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& c : clauses) c.push_back(Q(w(rng), 100));
      costs.push_back(Q(w(rng), 300));
    }
    const MultiActionInstance<Rational> inst(costs, SetFunction<Rational>(setfn::XosFn<Rational>{clauses}));
    const auto a = solve_exact(inst);
    const auto b = solve_over_breakpoints(inst);
    EXPECT_EQ(a.alpha, b.alpha) << "instance " << t;
    EXPECT_EQ(a.principal_utility, b.principal_utility) << "instance " << t;
    EXPECT_EQ(a.best_response, b.best_response) << "instance " << t;
  }
}

TEST(MultiActionUtility, Examples) {
  const auto g = gadgets::clique_xos_instance(triangle(), 1, Q(1, 2));
  EXPECT_EQ(principal_utility(g.instance, Q(1)), Q(0));
  EXPECT_EQ(principal_utility(g.instance, Q(7, 8)), Q(27, 8));
  EXPECT_EQ(principal_utility(g.instance, Q(1, 2)), Q(0));
  EXPECT_EQ(principal_utility(twin(), Q(1)), Q(0));
}

TEST(MultiActionUtility, ProfileMatchesDirectScan) {
  const auto g = gadgets::clique_xos_instance(triangle(), 1, Q(1, 2));
  const ActionProfile<Rational> profile(g.instance);
  for (int k = 0; k <= 40; ++k) {
    const Rational a = Q(k, 40);
    EXPECT_EQ(profile.principal_utility(a), principal_utility(g.instance, a));
    EXPECT_EQ(profile.best_response(a).mask, agent_best_response(g.instance, a).mask());
  }
}

TEST(MultiActionUtility, AlphaOutsideUnitInterval) {
  EXPECT_THROW(agent_best_response(twin(), Q(3, 2)), PreconditionError);
}

TEST(MultiActionSolve, RealMode) {
  const MultiActionInstance<double> inst({0.1, 0.1}, SetFunction<double>(setfn::AdditiveFn<double>{{0.4, 0.4}}));
  const auto sol = solve_exact(inst);
  EXPECT_NEAR(sol.alpha, 0.25, kRealTolerance);
  EXPECT_NEAR(sol.principal_utility, 0.6, kRealTolerance);
}
