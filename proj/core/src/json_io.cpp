#include "contractlab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "contractlab/errors.hpp"

namespace contractlab::json_io {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object containing '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t count_from_json(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

std::size_t index_from_json(const json& j, std::size_t bound, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer index");
  const long long v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > bound) {
    throw ParseError(std::string(what) + " index " + std::to_string(v) + " is outside 1.." + std::to_string(bound));
  }
  return static_cast<std::size_t>(v - 1);
}

template <Scalar T>
std::vector<T> vector_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<T> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(scalar_from_json<T>(x));
  return out;
}

template <Scalar T>
json vector_to_json(const std::vector<T>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(scalar_to_json(x));
  return out;
}

template <Scalar T>
const char* numeric_name() {
  return num::is_exact<T>() ? "rational" : "real";
}

template <Scalar T>
json model_json(const char* model, const std::vector<T>& costs, const setfn::SetFunction<T>& f) {
  return json{{"model", model}, {"numeric", numeric_name<T>()}, {"costs", vector_to_json(costs)}, {"f", setfn_to_json(f)}};
}

template <Scalar T>
AnyInstance build_instance(const std::string& model, const json& j) {
  auto costs = vector_from_json<T>(field(j, "costs"), "costs");
  auto f = setfn_from_json<T>(field(j, "f"));
  if (model == "multi-agent") return multiagent::MultiAgentInstance<T>(std::move(costs), std::move(f));
  return multiaction::MultiActionInstance<T>(std::move(costs), std::move(f));
}

}  // namespace

template <Scalar T>
T scalar_from_json(const json& j) {
  if (j.is_string()) {
    const Rational q = parse_rational(j.get<std::string>());
    return num::from_rational<T>(q);
  }
  if (j.is_number_integer()) {
    if constexpr (num::is_exact<T>()) {
      return j.is_number_unsigned() ? Rational(BigInt(j.get<std::uint64_t>())) : Rational(BigInt(j.get<std::int64_t>()));
    } else {
      return j.get<double>();
    }
  }
  if (j.is_number_float()) {
    if constexpr (num::is_exact<T>()) {
      return rational_from_decimal(j.get<double>());
    } else {
      return j.get<double>();
    }
  }
  throw ParseError("expected a number or a \"p/q\" string, got " + j.dump());
}

template <Scalar T>
json scalar_to_json(const T& x) {
  if constexpr (num::is_exact<T>()) {
    return contractlab::to_string(x);
  } else {
    return x;
  }
}

template <Scalar T>
json extended_to_json(const Extended<T>& x) {
  if (x.is_plus_infinity()) return "inf";
  if (x.is_minus_infinity()) return "-inf";
  return scalar_to_json(x.value());
}

json set_to_json(const ItemSet& s) {
  json out = json::array();
  for (std::size_t i : s.indices()) out.push_back(i + 1);
  return out;
}

ItemSet set_from_json(const json& j, std::size_t ground_size) {
  if (!j.is_array()) throw ParseError("a set must be an array of 1-based indices");
  ItemSet s(ground_size);
  for (const auto& x : j) s.insert(index_from_json(x, ground_size, "set member"));
  return s;
}

Graph graph_from_json(const json& j) {
  const std::size_t n = count_from_json(field(j, "vertices"), "vertices");
  Graph g(n);
  const auto& edges = field(j, "edges");
  if (!edges.is_array()) throw ParseError("edges must be an array of [u, v] pairs");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be a pair [u, v]");
    const std::size_t u = index_from_json(e[0], n, "edge endpoint");
    const std::size_t v = index_from_json(e[1], n, "edge endpoint");
    if (u == v) throw ParseError("self loops are not allowed");
    g.add_edge(u, v);
  }
  return g;
}

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
  return json{{"vertices", g.vertex_count()}, {"edges", edges}};
}

kprover::Formula3CNF5 formula_from_json(const json& j) {
  kprover::Formula3CNF5 phi;
  phi.n_vars = count_from_json(field(j, "n_vars"), "n_vars");
  const auto& clauses = field(j, "clauses");
  if (!clauses.is_array()) throw ParseError("clauses must be an array");
  for (const auto& c : clauses) {
    if (!c.is_array() || c.size() != 3) throw ParseError("each clause must have exactly three literals");
    std::array<int, 3> cl{};
    for (std::size_t t = 0; t < 3; ++t) {
      if (!c[t].is_number_integer()) throw ParseError("literals must be signed integers");
      cl[t] = c[t].get<int>();
    }
    phi.clauses.push_back(cl);
  }
  try {
    phi.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid 3CNF-5 formula: ") + e.what());
  }
  return phi;
}

json formula_to_json(const kprover::Formula3CNF5& phi) {
  json clauses = json::array();
  for (const auto& c : phi.clauses) clauses.push_back({c[0], c[1], c[2]});
  return json{{"n_vars", phi.n_vars}, {"clauses", clauses}};
}

template <Scalar T>
setfn::SetFunction<T> setfn_from_json(const json& j) {
  const auto& kind_j = field(j, "kind");
  if (!kind_j.is_string()) throw ParseError("kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  const T normalize = j.contains("normalize_by") ? scalar_from_json<T>(j["normalize_by"]) : T(1);
  typename setfn::SetFunction<T>::Repr repr = setfn::AdditiveFn<T>{};
  if (kind == "additive") {
    repr = setfn::AdditiveFn<T>{vector_from_json<T>(field(j, "weights"), "weights")};
  } else if (kind == "coverage") {
    setfn::CoverageFn c;
    c.universe_size = count_from_json(field(j, "universe_size"), "universe_size");
    const auto& covers = field(j, "covers");
    if (!covers.is_array()) throw ParseError("covers must be an array");
    for (const auto& cover : covers) c.covers.push_back(set_from_json(cover, c.universe_size));
    repr = std::move(c);
  } else if (kind == "xos") {
    setfn::XosFn<T> x;
    const auto& clauses = field(j, "clauses");
    if (!clauses.is_array()) throw ParseError("clauses must be an array");
    for (const auto& clause : clauses) x.clauses.push_back(vector_from_json<T>(clause, "clause"));
    repr = std::move(x);
  } else if (kind == "table") {
    setfn::TableFn<T> t{vector_from_json<T>(field(j, "values"), "values")};
    if (j.contains("empty_value") && !t.values.empty() && !num::eq(t.values[0], scalar_from_json<T>(j["empty_value"]))) {
      throw ParseError("values[0] does not match the declared empty_value");
    }
    repr = std::move(t);
  } else if (kind == "hidden-set") {
    setfn::HiddenSetFn h;
    h.n = count_from_json(field(j, "n"), "n");
    h.m = 0;
    for (std::size_t m = 1; m * m * m <= h.n; ++m) {
      if (m * m * m == h.n) h.m = m;
    }
    if (h.m == 0) throw ParseError("hidden-set n must be a perfect cube");
    h.good = set_from_json(field(j, "good"), h.n);
    repr = std::move(h);
  } else if (kind == "clique-gadget") {
    Graph g = graph_from_json(field(j, "graph"));
    const std::size_t delta = count_from_json(field(j, "delta"), "delta");
    const Rational eps = scalar_from_json<Rational>(field(j, "epsilon"));
    const Rational m = scalar_from_json<Rational>(field(j, "big_m"));
    try {
      repr = setfn::CliqueGadgetFn(std::move(g), delta, eps, m);
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string("invalid clique gadget: ") + e.what());
    }
  } else {
    throw ParseError("unknown set-function kind '" + kind + "'");
  }
  try {
    return setfn::SetFunction<T>(std::move(repr), normalize);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid ") + kind + " function: " + e.what());
  }
}

template <Scalar T>
json setfn_to_json(const setfn::SetFunction<T>& f) {
  json out = std::visit(
      overloaded{
          [](const setfn::AdditiveFn<T>& a) { return json{{"kind", "additive"}, {"weights", vector_to_json(a.weights)}}; },
          [](const setfn::CoverageFn& c) {
            json covers = json::array();
            for (const auto& cover : c.covers) covers.push_back(set_to_json(cover));
            return json{{"kind", "coverage"}, {"universe_size", c.universe_size}, {"covers", covers}};
          },
          [](const setfn::XosFn<T>& x) {
            json clauses = json::array();
            for (const auto& clause : x.clauses) clauses.push_back(vector_to_json(clause));
            return json{{"kind", "xos"}, {"clauses", clauses}};
          },
          [](const setfn::TableFn<T>& t) { return json{{"kind", "table"}, {"values", vector_to_json(t.values)}}; },
          [](const setfn::HiddenSetFn& h) { return json{{"kind", "hidden-set"}, {"n", h.n}, {"good", set_to_json(h.good)}}; },
          [](const setfn::CliqueGadgetFn& g) {
            return json{{"kind", "clique-gadget"},
                        {"graph", graph_to_json(g.graph())},
                        {"delta", g.delta()},
                        {"epsilon", contractlab::to_string(g.epsilon())},
                        {"big_m", contractlab::to_string(g.big_m())}};
          },
      },
      f.repr());
  if (f.normalize_by() != T(1)) out["normalize_by"] = scalar_to_json(f.normalize_by());
  return out;
}

AnyInstance instance_from_json(const json& j) {
  try {
    const auto& model_j = field(j, "model");
    if (!model_j.is_string()) throw ParseError("model must be a string");
    const std::string model = model_j.get<std::string>();
    if (model != "multi-agent" && model != "multi-action") throw ParseError("unknown model '" + model + "'");
    const auto& f = field(j, "f");
    std::string numeric = (f.is_object() && f.value("kind", "") == "hidden-set") ? "real" : "rational";
    if (j.contains("numeric")) {
      if (!j["numeric"].is_string()) throw ParseError("numeric must be \"rational\" or \"real\"");
      numeric = j["numeric"].get<std::string>();
    }
    if (numeric == "rational") return build_instance<Rational>(model, j);
    if (numeric == "real") return build_instance<double>(model, j);
    throw ParseError("numeric must be \"rational\" or \"real\"");
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(std::string("inconsistent instance: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

template <Scalar T>
json instance_to_json(const multiagent::MultiAgentInstance<T>& inst) {
  return model_json("multi-agent", inst.costs, inst.f);
}

template <Scalar T>
json instance_to_json(const multiaction::MultiActionInstance<T>& inst) {
  return model_json("multi-action", inst.costs, inst.f);
}

template <Scalar T>
json solution_to_json(const multiagent::MultiAgentSolution<T>& sol) {
  json payments = json::array();
  for (const auto& p : sol.payments) payments.push_back(extended_to_json(p));
  return json{{"model", "multi-agent"},
              {"numeric", numeric_name<T>()},
              {"S", set_to_json(sol.set)},
              {"payments", payments},
              {"objective", extended_to_json(sol.objective)}};
}

template <Scalar T>
json solution_to_json(const multiaction::MultiActionSolution<T>& sol) {
  return json{{"model", "multi-action"},
              {"numeric", numeric_name<T>()},
              {"alpha", scalar_to_json(sol.alpha)},
              {"best_response", set_to_json(sol.best_response)},
              {"principal_utility", scalar_to_json(sol.principal_utility)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

#define CONTRACTLAB_INSTANTIATE(T)                                                     \
  template T scalar_from_json<T>(const json&);                                         \
  template json scalar_to_json<T>(const T&);                                           \
  template json extended_to_json<T>(const Extended<T>&);                               \
  template setfn::SetFunction<T> setfn_from_json<T>(const json&);                      \
  template json setfn_to_json<T>(const setfn::SetFunction<T>&);                        \
  template json instance_to_json<T>(const multiagent::MultiAgentInstance<T>&);         \
  template json instance_to_json<T>(const multiaction::MultiActionInstance<T>&);       \
  template json solution_to_json<T>(const multiagent::MultiAgentSolution<T>&);         \
  template json solution_to_json<T>(const multiaction::MultiActionSolution<T>&);

CONTRACTLAB_INSTANTIATE(double)
CONTRACTLAB_INSTANTIATE(Rational)
#undef CONTRACTLAB_INSTANTIATE

}  // namespace contractlab::json_io
