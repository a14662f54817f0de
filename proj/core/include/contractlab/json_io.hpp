#pragma once

// JSON formats. Indices in JSON are 1-based (items, universe elements,
// vertices); exact values are written as "p/q" strings.

#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "contractlab/graph.hpp"
#include "contractlab/kprover.hpp"
#include "contractlab/multiaction.hpp"
#include "contractlab/multiagent.hpp"
#include "contractlab/setfn.hpp"

namespace contractlab::json_io {

using nlohmann::json;

template <Scalar T>
T scalar_from_json(const json& j);
template <Scalar T>
json scalar_to_json(const T& x);
template <Scalar T>
json extended_to_json(const Extended<T>& x);

json set_to_json(const ItemSet& s);
ItemSet set_from_json(const json& j, std::size_t ground_size);

Graph graph_from_json(const json& j);
json graph_to_json(const Graph& g);

kprover::Formula3CNF5 formula_from_json(const json& j);
json formula_to_json(const kprover::Formula3CNF5& phi);

template <Scalar T>
setfn::SetFunction<T> setfn_from_json(const json& j);
template <Scalar T>
json setfn_to_json(const setfn::SetFunction<T>& f);

using AnyInstance = std::variant<multiagent::MultiAgentInstance<double>, multiagent::MultiAgentInstance<Rational>,
                                 multiaction::MultiActionInstance<double>, multiaction::MultiActionInstance<Rational>>;

// {"model": "multi-agent" | "multi-action", "numeric": "rational" | "real",
// "costs": [...], "f": {...}}. numeric defaults to rational, except for
// hidden-set functions which default to real. Throws ParseError.
AnyInstance instance_from_json(const json& j);

template <Scalar T>
json instance_to_json(const multiagent::MultiAgentInstance<T>& inst);
template <Scalar T>
json instance_to_json(const multiaction::MultiActionInstance<T>& inst);

template <Scalar T>
json solution_to_json(const multiagent::MultiAgentSolution<T>& sol);
template <Scalar T>
json solution_to_json(const multiaction::MultiActionSolution<T>& sol);

// Reads a whole file; ParseError on I/O or syntax errors.
json read_json_file(const std::string& path);

}  // namespace contractlab::json_io
