#include <gtest/gtest.h>

#include "contractlab/errors.hpp"
#include "contractlab/gadgets.hpp"
#include "contractlab/json_io.hpp"
#include "support.hpp"

using namespace contractlab;
using namespace contractlab::json_io;
using contractlab::testing::Q;
using contractlab::testing::S;

TEST(JsonScalar, RationalStringsAndNumbers) {
  EXPECT_EQ(scalar_from_json<Rational>(json("3/10")), Q(3, 10));
  EXPECT_EQ(scalar_from_json<Rational>(json(0.3)), Q(3, 10));
  EXPECT_EQ(scalar_from_json<Rational>(json(2)), Q(2));
  EXPECT_EQ(scalar_to_json(Q(3, 10)), json("3/10"));
  EXPECT_DOUBLE_EQ(scalar_from_json<double>(json("1/4")), 0.25);
  EXPECT_THROW(scalar_from_json<Rational>(json("x/2")), ParseError);
  EXPECT_THROW(scalar_from_json<Rational>(json::array()), ParseError);
}

TEST(JsonScalar, Infinity) {
  EXPECT_EQ(extended_to_json(Extended<Rational>::plus_infinity()), json("inf"));
  EXPECT_EQ(extended_to_json(Extended<Rational>::minus_infinity()), json("-inf"));
}

TEST(JsonSet, OneBased) {
  EXPECT_EQ(set_to_json(S(4, {1, 3})), json::parse("[1,3]"));
  EXPECT_EQ(set_from_json(json::parse("[2,4]"), 4), S(4, {2, 4}));
  EXPECT_THROW(set_from_json(json::parse("[0]"), 4), ParseError);
  EXPECT_THROW(set_from_json(json::parse("[5]"), 4), ParseError);
}

TEST(JsonGraph, RoundTrip) {
  const Graph g = Graph::complete(4);
  EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
  EXPECT_THROW(graph_from_json(json::parse(R"({"vertices": 2, "edges": [[1, 1]]})")), ParseError);
}

TEST(JsonFormula, RoundTripAndValidation) {
  const auto phi = kprover::toy_formula();
  EXPECT_EQ(formula_from_json(formula_to_json(phi)).clauses, phi.clauses);
  EXPECT_THROW(formula_from_json(json::parse(R"({"n_vars": 3, "clauses": [[1, 2, 3]]})")), ParseError);
}

TEST(JsonInstance, AdditiveMultiAgent) {
  const auto j = json::parse(R"({"model": "multi-agent", "costs": ["3/50", "1/10"],
                                 "f": {"kind": "additive", "weights": ["3/10", "1/2"]}})");
  const auto any = instance_from_json(j);
  const auto* inst = std::get_if<multiagent::MultiAgentInstance<Rational>>(&any);
  ASSERT_NE(inst, nullptr);
  EXPECT_EQ(inst->costs[0], Q(3, 50));
  EXPECT_EQ(instance_to_json(*inst)["costs"], json::parse(R"(["3/50", "1/10"])"));
}

TEST(JsonInstance, HiddenSetDefaultsToReal) {
  const auto inst = gadgets::hidden_set_instance<double>(8, S(8, {1, 2}));
  const auto any = instance_from_json(instance_to_json(inst));
  EXPECT_TRUE(std::holds_alternative<multiagent::MultiAgentInstance<double>>(any));
}

TEST(JsonInstance, EveryKindRoundTrips) {
  const auto cover = gadgets::planted_cover_coverage(2, 1);
  const auto clique = gadgets::clique_xos_instance(Graph::complete(3), 1, Q(1, 2));
  const std::vector<json> docs = {
      instance_to_json(gadgets::multiagent_submodular_gadget(2, cover.function)),
      instance_to_json(gadgets::multiaction_submodular_gadget(2, cover.function, Q(1, 20))),
      instance_to_json(clique.instance),
      instance_to_json(gadgets::clique_xos_instance(Graph::complete(3), 1, Q(1, 2), true).instance),
      instance_to_json(multiagent::MultiAgentInstance<Rational>(
          {Q(1, 10), Q(1, 10)}, setfn::SetFunction<Rational>(setfn::XosFn<Rational>{{{Q(1, 2), Q(0)}, {Q(0), Q(1, 3)}}}))),
      instance_to_json(multiaction::MultiActionInstance<Rational>(
          {Q(0), Q(1, 10)}, setfn::SetFunction<Rational>(setfn::TableFn<Rational>{{Q(0), Q(1, 2), Q(1, 4), Q(1)}}))),
  };
  for (const auto& d : docs) {
    const auto again = std::visit([](const auto& inst) { return instance_to_json(inst); }, instance_from_json(d));
    EXPECT_EQ(again, d) << d.dump();
  }
}

TEST(JsonInstance, Errors) {
  EXPECT_THROW(instance_from_json(json::parse(R"({"model": "other", "costs": [], "f": {}})")), ParseError);
  EXPECT_THROW(instance_from_json(json::parse(R"({"model": "multi-agent", "costs": [1],
                                                  "f": {"kind": "additive", "weights": [1, 2]}})")),
               ParseError);
  EXPECT_THROW(instance_from_json(json::parse(R"({"model": "multi-agent", "costs": [-1],
                                                  "f": {"kind": "additive", "weights": [1]}})")),
               ParseError);
  EXPECT_THROW(instance_from_json(json::parse(R"({"model": "multi-agent", "costs": [1],
                                                  "f": {"kind": "magic"}})")),
               ParseError);
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), ParseError);
}

TEST(JsonSolution, MultiAgentAndMultiAction) {
  const multiagent::MultiAgentSolution<Rational> ma{S(2, {1, 2}), {Q(1, 5), Q(1, 5)}, Q(12, 25)};
  const auto j = solution_to_json(ma);
  EXPECT_EQ(j["S"], json::parse("[1,2]"));
  EXPECT_EQ(j["objective"], json("12/25"));
  const multiaction::MultiActionSolution<Rational> mx{Q(1, 4), S(2, {1, 2}), Q(3, 5)};
  const auto k = solution_to_json(mx);
  EXPECT_EQ(k["alpha"], json("1/4"));
  EXPECT_EQ(k["principal_utility"], json("3/5"));
}
