#include <gtest/gtest.h>

#include "contractlab/errors.hpp"
#include "contractlab/setfn.hpp"
#include "support.hpp"

using namespace contractlab;
using namespace contractlab::setfn;
using contractlab::testing::Q;
using contractlab::testing::S;

namespace {

SetFunction<Rational> additive(std::vector<Rational> w) { return SetFunction<Rational>(AdditiveFn<Rational>{std::move(w)}); }

// U = {u1, u2}, h(1) = {u1}, h(2) = {u1, u2}.
SetFunction<Rational> small_coverage() {
  CoverageFn c{2, {S(2, {1}), S(2, {1, 2})}};
  return SetFunction<Rational>(std::move(c));
}

}  // namespace

TEST(SetFnValue, AdditiveSumsWeights) {
  EXPECT_EQ(additive({Q(3, 10), Q(1, 2)}).value(S(2, {1, 2})), Q(4, 5));
}

TEST(SetFnValue, CoverageCountsCoveredFraction) {
  EXPECT_EQ(small_coverage().value(S(2, {1})), Q(1, 2));
  EXPECT_EQ(small_coverage().value(S(2, {2})), Q(1));
}

TEST(SetFnValue, XosTakesBestClause) {
  const SetFunction<Rational> f(XosFn<Rational>{{{Q(2, 5), Q(0)}, {Q(1, 10), Q(3, 10)}}});
  EXPECT_EQ(f.value(S(2, {1, 2})), Q(2, 5));
  EXPECT_EQ(f.value(S(2, {2})), Q(3, 10));
}

TEST(SetFnValue, RealModeMatchesExact) {
  const auto exact = additive({Q(3, 10), Q(1, 2)});
  const auto real = to_real(exact);
  EXPECT_NEAR(real.value(S(2, {1, 2})), 0.8, kRealTolerance);
}

TEST(SetFnValue, RejectsForeignGroundSet) {
  EXPECT_THROW(additive({Q(1), Q(1)}).value(S(3, {1})), DimensionError);
}

TEST(SetFnValue, RejectsNegativeWeights) {
  EXPECT_THROW(additive({Q(-1, 2)}), InvalidArgument);
}

TEST(SetFnMarginal, Examples) {
  EXPECT_EQ(marginal(additive({Q(3, 10), Q(1, 2)}), 0, S(2, {2})), Q(3, 10));
  EXPECT_EQ(marginal(small_coverage(), 0, S(2, {2})), Q(0));
  EXPECT_EQ(marginal(small_coverage(), 1, S(2, {1})), Q(1, 2));
}

TEST(SetFnMarginal, ItemAlreadyPresent) {
  EXPECT_THROW(marginal(small_coverage(), 0, S(2, {1})), PreconditionError);
}

TEST(SetFnDemand, PicksBestSurplus) {
  const auto f = additive({Q(3, 10), Q(1, 2)});
  const std::vector<Rational> p{Q(1, 10), Q(3, 5)};
  EXPECT_EQ(demand(f, std::span<const Rational>(p)), S(2, {1}));
}

TEST(SetFnDemand, AllNegativeGivesEmptySet) {
  const auto f = additive({Q(3, 10), Q(1, 2)});
  const std::vector<Rational> p{Q(2, 5), Q(3, 5)};
  EXPECT_EQ(demand(f, std::span<const Rational>(p)), ItemSet(2));
}

TEST(SetFnDemand, ZeroPricesOnMonotoneFunction) {
  const std::vector<Rational> p(2, Q(0));
  // f(u2 only) ties with the full set; the smaller mask {2} wins the tie.
  const ItemSet d = demand(small_coverage(), std::span<const Rational>(p));
  EXPECT_EQ(small_coverage().value(d), Q(1));
  EXPECT_EQ(d, S(2, {2}));
  const auto add = additive({Q(1, 3), Q(1, 5), Q(1, 7)});
  const std::vector<Rational> z(3, Q(0));
  EXPECT_EQ(demand(add, std::span<const Rational>(z)), ItemSet::full(3));
}

TEST(SetFnDemand, PriceLengthMismatch) {
  const std::vector<Rational> p{Q(0)};
  EXPECT_THROW(demand(small_coverage(), std::span<const Rational>(p)), DimensionError);
}

TEST(SetFnClasses, AdditiveIsMonotoneSubmodular) {
  const auto r = check_classes(additive({Q(1, 3), Q(0), Q(2, 7)}));
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(r.submodular);
}

TEST(SetFnClasses, CoverageIsSubmodular) {
  EXPECT_TRUE(check_classes(small_coverage()).submodular);
}

TEST(SetFnClasses, SupermodularTableWitness) {
  const SetFunction<Rational> f(TableFn<Rational>{{Q(0), Q(0), Q(0), Q(1)}});
  const auto r = check_classes(f);
  EXPECT_TRUE(r.monotone);
  ASSERT_FALSE(r.submodular);
  ASSERT_TRUE(r.submodular_witness.has_value());
  EXPECT_EQ(r.submodular_witness->item, 0u);
  EXPECT_EQ(r.submodular_witness->smaller, ItemSet(2));
  EXPECT_EQ(r.submodular_witness->larger, S(2, {2}));
}

TEST(SetFnClasses, NonMonotoneWitness) {
  const SetFunction<Rational> f(TableFn<Rational>{{Q(0), Q(1, 2), Q(1, 2), Q(1, 4)}});
  const auto r = check_classes(f);
  EXPECT_FALSE(r.monotone);
  ASSERT_TRUE(r.monotone_witness.has_value());
  EXPECT_EQ(r.monotone_witness->larger.size(), 2u);
}

TEST(SetFnClasses, CapIsEnforced) {
  Caps caps;
  caps.class_check = 2;
  EXPECT_THROW(check_classes(additive({Q(1), Q(1), Q(1)}), caps), CapExceeded);
}

TEST(SetFnHiddenSet, IrrationalInExactMode) {
  const SetFunction<Rational> f(HiddenSetFn{8, 2, S(8, {1, 2})});
  EXPECT_THROW(f.value(S(8, {1, 2, 3})), IrrationalValue);
  // |S & G| = 2 dominates sqrt(2) and 2/sqrt(2), so the value is rational.
  EXPECT_EQ(f.value(S(8, {1, 2})), Q(1, 4));
}

TEST(SetFnHiddenSet, RealValues) {
  const SetFunction<double> f(HiddenSetFn{8, 2, S(8, {1, 2})});
  EXPECT_NEAR(f.value(S(8, {1, 2, 3})), 3.0 / (8.0 * std::sqrt(2.0)), 1e-12);
  EXPECT_NEAR(f.value(S(8, {3})), std::sqrt(2.0) / 8.0, 1e-12);
  EXPECT_NEAR(f.value(S(8, {1})), std::sqrt(2.0) / 8.0, 1e-12);
  EXPECT_EQ(f.value(ItemSet(8)), 0.0);
}

TEST(SetFnNormalize, DividesValues) {
  const SetFunction<Rational> f(AdditiveFn<Rational>{{Q(2), Q(6)}}, Q(8));
  EXPECT_EQ(f.value(S(2, {2})), Q(3, 4));
}
