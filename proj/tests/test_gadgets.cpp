#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "contractlab/errors.hpp"
#include "contractlab/gadgets.hpp"
#include "support.hpp"

using namespace contractlab;
using namespace contractlab::gadgets;
using contractlab::testing::Q;
using contractlab::testing::S;

TEST(HiddenSet, CubeRoot) {
  EXPECT_EQ(cube_root_exact(8), 2u);
  EXPECT_EQ(cube_root_exact(512), 8u);
  EXPECT_THROW(cube_root_exact(9), InvalidArgument);
}

TEST(HiddenSet, InstanceShape) {
  const auto inst = hidden_set_instance<Rational>(27, S(27, {4, 5, 6}));
  ASSERT_EQ(inst.size(), 27u);
  for (const auto& c : inst.costs) EXPECT_EQ(c, Q(1, 162));
}

TEST(HiddenSet, RejectsNonCube) {
  EXPECT_THROW(hidden_set_instance<double>(10, std::uint64_t{1}), InvalidArgument);
}

TEST(HiddenSet, RejectsWrongGoodSetSize) {
  EXPECT_THROW(hidden_set_instance<double>(8, S(8, {1})), InvalidArgument);
}

TEST(HiddenSet, SeededGoodSetIsReproducible) {
  const auto a = hidden_set_instance<double>(64, std::uint64_t{9});
  const auto b = hidden_set_instance<double>(64, std::uint64_t{9});
  const auto& ga = std::get<setfn::HiddenSetFn>(a.f.repr()).good;
  EXPECT_EQ(ga, std::get<setfn::HiddenSetFn>(b.f.repr()).good);
  EXPECT_EQ(ga.size(), 4u);
}

TEST(HiddenSet, ValueExamples) {
  const auto inst = hidden_set_instance<double>(8, S(8, {1, 2}));
  EXPECT_NEAR(inst.f.value(S(8, {1, 2, 3})), 0.2651650429, 1e-9);
  const double single = std::sqrt(2.0) / 8.0;
  for (std::size_t i = 1; i <= 8; ++i) EXPECT_NEAR(inst.f.value(S(8, {i})), single, 1e-12);
}

TEST(HiddenSet, SuccessfulQuery) {
  const ItemSet g = S(8, {1, 2});
  EXPECT_TRUE(is_successful_query(8, g, S(8, {1, 2})));
  EXPECT_FALSE(is_successful_query(8, g, ItemSet::full(8)));
  EXPECT_FALSE(is_successful_query(8, g, S(8, {3, 4})));
  EXPECT_FALSE(is_successful_query(8, g, S(8, {1, 3})));
}

TEST(CliqueGadget, TriangleConstants) {
  const auto g = clique_xos_instance(Graph::complete(3), 1, Q(1, 2));
  EXPECT_EQ(g.epsilon, Q(3));
  EXPECT_EQ(g.big_m, Q(7));
  EXPECT_EQ(g.augmented.vertex_count(), 4u);
  EXPECT_EQ(g.instance.f.value(S(4, {4})), Q(11));
  EXPECT_EQ(g.instance.f.value(ItemSet::full(4)), Q(31));
  for (const auto& c : g.instance.costs) EXPECT_EQ(c, Q(7));
}

TEST(CliqueGadget, NonCliqueValue) {
  const auto g = clique_xos_instance(Graph::complete(3), 1, Q(1, 2));
  // {1, 4} is not a clique: M s + delta eps.
  EXPECT_EQ(g.instance.f.value(S(4, {1, 4})), Q(7 * 2 + 3));
  EXPECT_EQ(g.instance.f.value(S(4, {1, 2, 4})), Q(7 * 3 + 3));
}

TEST(CliqueGadget, Normalized) {
  const auto g = clique_xos_instance(Graph::complete(3), 1, Q(1, 2), true);
  EXPECT_EQ(g.scale, Q(31));
  EXPECT_EQ(g.instance.f.value(ItemSet::full(4)), Q(1));
  EXPECT_EQ(g.instance.f.value(S(4, {4})), Q(11, 31));
  for (const auto& c : g.instance.costs) EXPECT_EQ(c, Q(7, 31));
}

TEST(CliqueGadget, ClauseValues) {
  const auto g = clique_xos_instance(Graph::complete(3), 1, Q(1, 2));
  const auto& fn = g.function();
  EXPECT_EQ(xos_clause_value(fn, S(4, {1, 2}), S(4, {1})), Q(19, 2));
  EXPECT_EQ(xos_clause_value(fn, S(4, {1, 2}), S(4, {3, 4})), Q(0));
  for (Word m = 1; m < 16; ++m) {
    const ItemSet s = ItemSet::from_mask(4, m);
    EXPECT_EQ(xos_clause_value(fn, s, s), g.instance.f.value(s));
  }
}

TEST(CliqueGadget, RejectsBadParameters) {
  EXPECT_THROW(clique_xos_instance(Graph::complete(3), 0, Q(1, 2)), InvalidArgument);
  EXPECT_THROW(clique_xos_instance(Graph::complete(3), 1, Q(3, 2)), InvalidArgument);
}

TEST(PlantedCover, PairAndSingletons) {
  const auto cover = planted_cover_coverage(2, 0);
  const setfn::SetFunction<Rational> f(cover.function);
  EXPECT_EQ(cover.planted, S(2, {1, 2}));
  EXPECT_EQ(f.value(S(2, {1, 2})), Q(1));
  EXPECT_EQ(f.value(S(2, {1})), Q(1, 2));
}

TEST(PlantedCover, DisjointPlantedBlocks) {
  for (std::size_t copies : {0, 1, 2}) {
    const auto cover = planted_cover_coverage(3, copies);
    const setfn::SetFunction<Rational> f(cover.function);
    EXPECT_EQ(f.value(S(f.ground_size(), {1, 2})), Q(2, 3));
    EXPECT_EQ(f.value(S(f.ground_size(), {2, 3})), Q(2, 3));
    for (std::size_t i = 0; i < f.ground_size(); ++i) {
      ItemSet one(f.ground_size());
      one.insert(i);
      EXPECT_EQ(f.value(one), Q(1, 3));
    }
    EXPECT_TRUE(setfn::check_classes(f).submodular);
  }
}

TEST(MultiAgentSubmodularGadget, OptimumAndCosts) {
  const auto cover = planted_cover_coverage(2, 1);
  const auto inst = multiagent_submodular_gadget(2, cover.function);
  for (const auto& c : inst.costs) EXPECT_EQ(c, Q(1, 8));
  const auto sol = multiagent::solve_exact(inst);
  EXPECT_EQ(sol.objective, Extended<Rational>(Q(1, 2)));
  EXPECT_EQ(sol.set, cover.planted);
}

TEST(MultiAgentSubmodularGadget, LargeSetsAreUnprofitable) {
  const auto cover = planted_cover_coverage(2, 2);
  const auto inst = multiagent_submodular_gadget(2, cover.function);
  const std::size_t n = inst.size();
  for (Word m = 0; m < (Word{1} << n); ++m) {
    const ItemSet s = ItemSet::from_mask(n, m);
    if (s.size() < 4) continue;
    EXPECT_FALSE(Extended<Rational>(Q(0)) < multiagent::objective_g(inst, s)) << s.to_string();
  }
}

TEST(MultiAgentSubmodularGadget, RequiresSingletons) {
  setfn::CoverageFn bad{2, {S(2, {1, 2}), S(2, {1})}};
  EXPECT_THROW(multiagent_submodular_gadget(2, bad), InvalidArgument);
}

TEST(MultiActionSubmodularGadget, Costs) {
  const auto cover = planted_cover_coverage(2, 0);
  const auto inst = multiaction_submodular_gadget(2, cover.function, Q(1, 20));
  ASSERT_EQ(inst.size(), 3u);
  // (1 - beta^3)/2 and (1 - beta^2)/(2k).
  EXPECT_EQ(inst.costs[0], Q(7999, 16000));
  EXPECT_EQ(inst.costs[1], Q(399, 1600));
  EXPECT_EQ(inst.costs[2], Q(399, 1600));
}

TEST(MultiActionSubmodularGadget, BestResponses) {
  const Rational beta = Q(1, 20);
  const auto cover = planted_cover_coverage(2, 1);
  const auto inst = multiaction_submodular_gadget(2, cover.function, beta);
  const ItemSet at = multiaction::agent_best_response(inst, Q(1) - beta * beta);
  EXPECT_GE(inst.f.value(at), Q(1, 2));
  for (int k = 0; k < 20; ++k) {
    const Rational a = (Q(1) - beta * beta) * Q(k, 20);
    EXPECT_EQ(multiaction::agent_best_response(inst, a), ItemSet(inst.size())) << to_string(a);
  }
  EXPECT_LT(multiaction::solve_exact(inst).alpha, Q(1) - beta * beta * beta);
}

TEST(MultiActionSubmodularGadget, RejectsLargeBeta) {
  const auto cover = planted_cover_coverage(2, 0);
  EXPECT_THROW(multiaction_submodular_gadget(2, cover.function, Q(1, 10)), InvalidArgument);
}

TEST(PseudoSymmetric, RandomSpecsAreValid) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + t;
    const auto r = random_pseudo_symmetric(n, t % 2 == 0, rng);
    const auto f = multiagent::pseudo_symmetric_function(r.spec);
    const auto classes = setfn::check_classes(f);
    EXPECT_TRUE(classes.monotone);
    EXPECT_TRUE(classes.submodular);
    if (t % 2 == 0) {
      EXPECT_EQ(r.spec.bonus, Q(0));
    }
  }
}

TEST(SoundnessScan, ReportsBestValues) {
  const auto cover = planted_cover_coverage(2, 0);
  const auto rows = coverage_soundness_scan(cover.function, 2, 2, 0.05);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_DOUBLE_EQ(rows[1].best_value, 1.0);
}
