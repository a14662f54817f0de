#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contractlab/cliquereduce.hpp"
#include "contractlab/errors.hpp"
#include "contractlab/gadgets.hpp"
#include "contractlab/json_io.hpp"
#include "contractlab/kprover.hpp"
#include "contractlab/verify.hpp"

namespace {

using namespace contractlab;
using json_io::json;

enum ExitCode : int { kPass = 0, kViolation = 1, kInputError = 2, kCapExceeded = 3 };

struct RunConfig {
  std::uint64_t seed = 20240601;
  std::size_t trials = 100000;
  std::optional<std::size_t> cap_n;
  std::string out;

  Caps caps() const {
    Caps c;
    if (cap_n) {
      c.enumerate = *cap_n;
      c.class_check = std::min(c.class_check, *cap_n);
      c.pairwise = std::min(c.pairwise, *cap_n);
    }
    return c;
  }
};

void emit(const RunConfig& run, const std::string& text) {
  if (run.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(run.out, std::ios::binary);
  if (!file) throw ParseError("cannot open '" + run.out + "' for writing");
  file << text;
}

void emit(const RunConfig& run, const json& j) { emit(run, j.dump(2) + "\n"); }

Rational rational_arg(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

// --- solve ---

struct SolveArgs {
  std::string path;
  std::string method = "envelope";
};

int cmd_solve(const RunConfig& run, const SolveArgs& args) {
  const auto inst = json_io::instance_from_json(json_io::read_json_file(args.path));
  const Caps caps = run.caps();
  const json out = std::visit(
      [&](const auto& x) -> json {
        using I = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<I, multiagent::MultiAgentInstance<double>> ||
                      std::is_same_v<I, multiagent::MultiAgentInstance<Rational>>) {
          return json_io::solution_to_json(multiagent::solve_exact(x, {}, caps));
        } else {
          return json_io::solution_to_json(args.method == "breakpoints" ? multiaction::solve_over_breakpoints(x, caps)
                                                                        : multiaction::solve_exact(x, caps));
        }
      },
      inst);
  emit(run, out);
  return kPass;
}

// --- generate ---

struct GenerateArgs {
  std::size_t n = 27;
  std::string graph;
  std::size_t delta = 1;
  std::string beta = "1/2";
  bool normalize = false;
  std::string formula;
  std::size_t k = 2;
  std::size_t ell = 2;
  std::size_t copies = 1;
  std::string model = "multi-agent";
  bool symmetric = false;
};

bool is_square(std::size_t m) {
  const auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m))));
  return r * r == m;
}

json gen_hidden_set(const RunConfig& run, const GenerateArgs& a) {
  const auto inst = gadgets::hidden_set_instance<Rational>(a.n, run.seed);
  json j = json_io::instance_to_json(inst);
  if (!is_square(gadgets::cube_root_exact(a.n))) j["numeric"] = "real";
  return j;
}

json gen_clique_xos(const GenerateArgs& a) {
  const Graph g = json_io::graph_from_json(json_io::read_json_file(a.graph));
  const auto gadget = gadgets::clique_xos_instance(g, a.delta, rational_arg(a.beta, "--beta"), a.normalize);
  json j = json_io::instance_to_json(gadget.instance);
  j["big_m"] = to_string(gadget.big_m);
  j["epsilon"] = to_string(gadget.epsilon);
  j["delta"] = gadget.delta;
  return j;
}

json gen_kprover(const GenerateArgs& a) {
  const kprover::Formula3CNF5 phi =
      a.formula.empty() ? kprover::toy_formula() : json_io::formula_from_json(json_io::read_json_file(a.formula));
  const auto cov = kprover::kprover_coverage(phi, kprover::KProverParams::greedy(a.k, a.ell));
  json j = json_io::instance_to_json(gadgets::multiagent_submodular_gadget(cov.k_prime, cov.coverage));
  j["k_prime"] = cov.k_prime;
  j["universe_size"] = cov.coverage.universe_size;
  return j;
}

json gen_planted_cover(const GenerateArgs& a) {
  const auto cover = gadgets::planted_cover_coverage(a.k, a.copies);
  json j;
  if (a.model == "multi-agent") {
    j = json_io::instance_to_json(gadgets::multiagent_submodular_gadget(a.k, cover.function));
    j["planted"] = json_io::set_to_json(cover.planted);
  } else if (a.model == "multi-action") {
    j = json_io::instance_to_json(
        gadgets::multiaction_submodular_gadget(a.k, cover.function, rational_arg(a.beta, "--beta")));
  } else {
    throw ParseError("--model must be multi-agent or multi-action");
  }
  return j;
}

json gen_pseudo_symmetric(const RunConfig& run, const GenerateArgs& a) {
  std::mt19937_64 rng(run.seed);
  const auto r = gadgets::random_pseudo_symmetric(a.n, a.symmetric, rng);
  json j = json_io::instance_to_json(
      multiagent::MultiAgentInstance<Rational>(r.costs, multiagent::pseudo_symmetric_function(r.spec)));
  j["special_set"] = json_io::set_to_json(r.spec.special_set);
  j["bonus"] = to_string(r.spec.bonus);
  return j;
}

// --- verify ---

struct VerifyArgs {
  std::vector<std::string> names{"all"};
  bool list = false;
};

int cmd_verify(const RunConfig& run, const VerifyArgs& args) {
  if (args.list) {
    std::ostringstream out;
    for (const auto& s : verify::suites()) {
      out << s.name;
      for (const auto& a : s.aliases) out << " (" << a << ")";
      out << "  " << s.summary << "\n";
    }
    emit(run, out.str());
    return kPass;
  }
  std::vector<const verify::Suite*> chosen;
  for (const auto& name : args.names) {
    if (name == "all") {
      for (const auto& s : verify::suites()) chosen.push_back(&s);
    } else if (const auto* s = verify::find_suite(name)) {
      chosen.push_back(s);
    } else {
      std::cerr << "error: unknown suite '" << name << "' (see verify --list)\n";
      return kInputError;
    }
  }
  const verify::VerifyConfig config{run.seed, run.trials, run.caps()};
  std::vector<verify::SuiteResult> results;
  bool ok = true;
  for (const auto* s : chosen) {
    results.push_back(verify::run_suite(*s, config));
    const auto& r = results.back();
    ok = ok && r.passed();
    std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.suite << " (" << r.checks.size() << " checks, " << r.seconds
              << " s)\n";
    for (const auto& c : r.checks) {
      if (!c.passed) std::cerr << "  violated: " << c.check << ": " << c.detail << "\n";
    }
  }
  std::ostringstream csv;
  verify::write_csv(csv, results);
  emit(run, csv.str());
  return ok ? kPass : kViolation;
}

// --- estimate-success ---

struct EstimateArgs {
  std::size_t n = 512;
  std::optional<std::size_t> set_size;
};

int cmd_estimate(const RunConfig& run, const EstimateArgs& a) {
  const std::size_t m = gadgets::cube_root_exact(a.n);
  const std::size_t size =
      a.set_size.value_or(static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(m), 1.5))));
  if (size > a.n) throw ParseError("--set-size exceeds n");
  const auto e = verify::estimate_success(a.n, size, run.trials, run.seed);
  if (!e.bound_claimed) std::cerr << "warning: n < 512, the bound is not claimed\n";
  emit(run, json{{"n", e.n},
                 {"m", e.m},
                 {"set_size", e.set_size},
                 {"trials", e.trials},
                 {"successes", e.successes},
                 {"rate", e.rate},
                 {"stderr", e.stderr_},
                 {"bound", e.bound},
                 {"bound_claimed", e.bound_claimed},
                 {"exact_tail", e.exact_tail}});
  return kPass;
}

// --- clique ---

struct CliqueArgs {
  std::string graph;
  std::size_t delta = 1;
  std::string beta = "1/2";
  std::string oracle = "exact";
};

cliquereduce::ContractOracle pick_oracle(const CliqueArgs& a, const Rational& beta) {
  if (a.oracle == "exact") return cliquereduce::exact_oracle();
  if (a.oracle == "degraded") return cliquereduce::degraded_oracle(beta);
  throw ParseError("--oracle must be exact or degraded");
}

json round_to_json(const cliquereduce::DistinguishResult& r) {
  return json{{"delta", r.delta},
              {"verdict", cliquereduce::to_string(r.verdict)},
              {"alpha", to_string(r.alpha)},
              {"threshold", to_string(r.threshold)}};
}

int cmd_clique(const RunConfig& run, const CliqueArgs& a, bool approx) {
  const Graph g = json_io::graph_from_json(json_io::read_json_file(a.graph));
  const Rational beta = rational_arg(a.beta, "--beta");
  const auto oracle = pick_oracle(a, beta);
  if (approx) {
    const auto res = cliquereduce::approx_clique(g, beta, oracle);
    json rounds = json::array();
    for (const auto& r : res.rounds) rounds.push_back(round_to_json(r));
    emit(run, json{{"omega_estimate", res.estimate}, {"beta", a.beta}, {"oracle", oracle.name}, {"rounds", rounds}});
  } else {
    json j = round_to_json(cliquereduce::distinguish(g, a.delta, beta, oracle));
    j["beta"] = a.beta;
    j["oracle"] = oracle.name;
    emit(run, j);
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear-contract solvers, hardness gadgets and property suites"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig run;
  std::size_t cap_n = 0;
  app.add_option("--seed", run.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--trials", run.trials, "Monte Carlo and sampling trials")->capture_default_str();
  auto* cap_opt = app.add_option("--cap-n", cap_n, "largest n for exhaustive enumeration")->check(CLI::Range(1, 63));
  app.add_option("--out", run.out, "output file (default stdout)");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "solve an instance file exactly");
  solve->add_option("instance", solve_args.path, "instance JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--method", solve_args.method, "multi-action route")
      ->check(CLI::IsMember({"envelope", "breakpoints"}))
      ->capture_default_str();

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write a gadget instance");
  generate->require_subcommand(1);
  auto* g_hidden = generate->add_subcommand("hidden-set", "hidden-set instance, good set drawn from --seed");
  g_hidden->add_option("--n", gen.n, "number of agents, a perfect cube")->capture_default_str();
  auto* g_clique = generate->add_subcommand("clique-xos", "XOS clique gadget for a graph");
  g_clique->add_option("--graph", gen.graph, "graph JSON")->required()->check(CLI::ExistingFile);
  g_clique->add_option("--delta", gen.delta)->capture_default_str();
  g_clique->add_option("--beta", gen.beta)->capture_default_str();
  g_clique->add_flag("--normalize", gen.normalize, "scale f so that f(V') = 1");
  auto* g_kprover = generate->add_subcommand("kprover", "k-prover coverage instance");
  g_kprover->add_option("--formula", gen.formula, "3CNF-5 formula JSON (default: toy formula)")
      ->check(CLI::ExistingFile);
  g_kprover->add_option("--k", gen.k)->capture_default_str();
  g_kprover->add_option("--ell", gen.ell)->capture_default_str();
  auto* g_planted = generate->add_subcommand("planted-cover", "planted coverage gadget");
  g_planted->add_option("--k", gen.k)->capture_default_str();
  g_planted->add_option("--copies", gen.copies, "extra items per block")->capture_default_str();
  g_planted->add_option("--model", gen.model)->check(CLI::IsMember({"multi-agent", "multi-action"}))->capture_default_str();
  g_planted->add_option("--beta", gen.beta)->capture_default_str();
  auto* g_pseudo = generate->add_subcommand("pseudo-symmetric", "random pseudo-symmetric submodular instance");
  g_pseudo->add_option("--n", gen.n)->capture_default_str();
  g_pseudo->add_flag("--symmetric", gen.symmetric, "no bonus on the special set");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "run property suites, CSV of per-check results");
  verify_cmd->add_option("suites", verify_args.names, "suite names or aliases, or all");
  verify_cmd->add_flag("--list", verify_args.list, "list suites");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate-success", "Monte Carlo success rate of a fixed hidden-set query");
  estimate->add_option("--n", est.n)->capture_default_str();
  estimate->add_option("--set-size", est.set_size, "query size (default floor(m^1.5))");

  CliqueArgs clique_args;
  auto* clique = app.add_subcommand("clique", "clique reductions through a contract oracle");
  clique->require_subcommand(1);
  auto* c_approx = clique->add_subcommand("approx", "estimate the clique number");
  auto* c_dist = clique->add_subcommand("distinguish", "decide SMALL or LARGE for one delta");
  for (auto* c : {c_approx, c_dist}) {
    c->add_option("--graph", clique_args.graph, "graph JSON")->required()->check(CLI::ExistingFile);
    c->add_option("--beta", clique_args.beta)->capture_default_str();
    c->add_option("--oracle", clique_args.oracle)->check(CLI::IsMember({"exact", "degraded"}))->capture_default_str();
  }
  c_dist->add_option("--delta", clique_args.delta)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }
  if (*cap_opt) run.cap_n = cap_n;

  try {
    if (*solve) return cmd_solve(run, solve_args);
    if (*generate) {
      json j;
      if (*g_hidden) j = gen_hidden_set(run, gen);
      if (*g_clique) j = gen_clique_xos(gen);
      if (*g_kprover) j = gen_kprover(gen);
      if (*g_planted) j = gen_planted_cover(gen);
      if (*g_pseudo) j = gen_pseudo_symmetric(run, gen);
      emit(run, j);
      return kPass;
    }
    if (*verify_cmd) return cmd_verify(run, verify_args);
    if (*estimate) return cmd_estimate(run, est);
    if (*clique) return cmd_clique(run, clique_args, c_approx->parsed());
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const json_io::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kPass;
}
