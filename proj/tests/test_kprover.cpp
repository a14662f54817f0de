#include <gtest/gtest.h>

#include "contractlab/errors.hpp"
#include "contractlab/kprover.hpp"
#include "support.hpp"

using namespace contractlab;
using namespace contractlab::kprover;
using contractlab::testing::Q;

namespace {

const KProverCoverage& toy() {
  static const KProverCoverage cov = kprover_coverage(toy_formula(), KProverParams::greedy(2, 2));
  return cov;
}

ItemSet block_union(const KProverCoverage& cov, std::uint64_t r, const std::vector<std::pair<std::size_t, std::size_t>>& family) {
  ItemSet u(cov.coverage.universe_size);
  for (const auto& [j, i] : family) u |= cov.block(r, j, i);
  return u;
}

}  // namespace

TEST(Formula, ToyIsValidAndSatisfiable) {
  const auto phi = toy_formula();
  EXPECT_NO_THROW(phi.validate());
  EXPECT_TRUE(phi.satisfied_by({true, true, true}));
  EXPECT_FALSE(phi.satisfied_by({false, false, false}));
}

TEST(Formula, RejectsRepeatedVariable) {
  Formula3CNF5 phi = toy_formula();
  phi.clauses[0] = {1, 1, 3};
  EXPECT_THROW(phi.validate(), InvalidArgument);
}

TEST(Codebook, GreedyWordsAreValid) {
  const auto p = KProverParams::greedy(2, 2);
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.codewords.size(), 2u);
  const auto q = KProverParams::greedy(3, 6);
  EXPECT_NO_THROW(q.validate());
}

TEST(Codebook, RejectsWrongWeight) {
  KProverParams p{2, 2, {{1, 1}, {0, 1}}};
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(KProverCoverageToy, Sizes) {
  const auto& cov = toy();
  EXPECT_EQ(cov.question_count, 15u);
  EXPECT_EQ(cov.k_prime, 30u);
  EXPECT_EQ(cov.randomness_count, 225u);
  EXPECT_EQ(cov.big_l, 4u);
  EXPECT_EQ(cov.block_size, 16u);
  EXPECT_EQ(cov.coverage.universe_size, 3600u);
}

TEST(KProverCoverageToy, SingletonValues) {
  const auto& cov = toy();
  const setfn::SetFunction<Rational> f(cov.coverage);
  for (std::size_t i = 0; i < cov.items.size(); ++i) {
    ItemSet one(cov.items.size());
    one.insert(i);
    EXPECT_EQ(f.value(one), Q(1, 30)) << "item " << i;
  }
}

TEST(KProverCoverageToy, PlantedAssignmentCoversEverything) {
  const auto& cov = toy();
  const ItemSet s = planted_assignment_set(cov, {true, true, true});
  EXPECT_EQ(s.size(), 30u);
  EXPECT_EQ(setfn::SetFunction<Rational>(cov.coverage).value(s), Q(1));
}

TEST(KProverCoverageToy, BlockUnionSizes) {
  const auto& cov = toy();
  for (std::uint64_t r : {std::uint64_t{0}, std::uint64_t{17}, std::uint64_t{224}}) {
    EXPECT_EQ(block_union(cov, r, {{0, 1}}).size(), 8u);
    EXPECT_EQ(block_union(cov, r, {{0, 0}, {2, 1}}).size(), 12u);
    EXPECT_EQ(block_union(cov, r, {{0, 0}, {1, 1}, {2, 0}, {3, 1}}).size(), 15u);
    // Every coordinate value of one coordinate: the whole slice.
    EXPECT_EQ(block_union(cov, r, {{1, 0}, {1, 1}}), cov.randomness_slice(r));
  }
}

TEST(KProverCoverageToy, SampledClaims) {
  const auto report = verify_block_claims(toy(), 200, 7);
  EXPECT_TRUE(report.passed) << report.witness;
  EXPECT_EQ(report.union_checks, 200u);
  EXPECT_EQ(report.family_checks, 200u);
}

TEST(KProverCoverageToy, ElementIndexing) {
  const auto& cov = toy();
  EXPECT_EQ(cov.element({0, 0, 0, 0}, 0), 0u);
  EXPECT_EQ(cov.element({1, 0, 0, 0}, 0), 1u);
  EXPECT_EQ(cov.element({0, 0, 0, 1}, 2), 2 * 16u + 8u);
}

TEST(KProverCoverage, EllCap) {
  EXPECT_THROW(KProverParams::greedy(2, 12), CapExceeded);
}
