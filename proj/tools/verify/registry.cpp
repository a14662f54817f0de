#include <algorithm>
#include <chrono>

#include "contractlab/verify.hpp"

namespace contractlab::verify {

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void SuiteResult::add(std::string check, bool ok, double metric, std::string detail) {
  checks.push_back({std::move(check), ok, metric, std::move(detail)});
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"hidden-set-formula", {}, "optimal hidden-set contract and its objective", hidden_set_formula},
      {"hidden-set-unsuccessful-bound", {}, "objective of sets that are not successful queries",
       hidden_set_unsuccessful_bound},
      {"clique-best-response", {"lemma-6.4"}, "agent best response on the clique gadget per alpha range",
       clique_best_response},
      {"clique-approximation", {}, "clique distinguisher promises and the doubling estimate", clique_approximation},
      {"planted-cover-multiagent", {}, "planted cover gadget, multi-agent optimum", planted_cover_multiagent},
      {"planted-cover-multiaction", {}, "planted cover gadget, multi-action optimum", planted_cover_multiaction},
      {"ptas-pseudosymmetric", {}, "candidate family versus exhaustive optimum", ptas_pseudosymmetric},
      {"kprover-toy", {"claim-A.3"}, "k-prover coverage block claims on the toy formula", kprover_toy},
      {"multiaction-grid-oracle", {}, "breakpoint solver versus a fine alpha grid", multiaction_grid_oracle},
      {"analytic-inequalities", {"thm-4.1-case2-inequality"}, "closed-form inequalities on a parameter grid",
       analytic_inequalities},
      {"hidden-set-monte-carlo", {}, "success probability of a fixed query", hidden_set_monte_carlo},
      {"setfn-properties", {"setfn"}, "set-function oracles and class checks", setfn_properties},
      {"multiagent-properties", {"multiagent"}, "equilibrium payments and exact solver", multiagent_properties},
      {"multiaction-properties", {"multiaction"}, "best responses and the agent envelope", multiaction_properties},
      {"gadget-properties", {"gadgets"}, "hidden-set, clique and coverage gadgets", gadget_properties},
      {"clique-threshold", {"cliquereduce"}, "threshold classification and degraded oracles", clique_threshold},
  };
  return all;
}

const Suite* find_suite(const std::string& name) {
  for (const auto& s : suites()) {
    if (s.name == name || std::find(s.aliases.begin(), s.aliases.end(), name) != s.aliases.end()) return &s;
  }
  return nullptr;
}

SuiteResult run_suite(const Suite& suite, const VerifyConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult r = suite.run(config);
  r.suite = suite.name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<SuiteResult>& results) {
  out << "suite,check,passed,metric,detail\n";
  for (const auto& r : results) {
    for (const auto& c : r.checks) {
      out << quote(r.suite) << ',' << quote(c.check) << ',' << (c.passed ? "true" : "false") << ',' << c.metric
          << ',' << quote(c.detail) << '\n';
    }
  }
}

}  // namespace contractlab::verify
