// Runs the eleven acceptance criteria and prints one PASS/FAIL line each.
// A criterion passes when every check of its suite passes within the time limit.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "contractlab/verify.hpp"

namespace {

using contractlab::verify::SuiteResult;
using contractlab::verify::VerifyConfig;

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  SuiteResult (*run)(const VerifyConfig&);
};

const std::vector<Criterion>& criteria() {
  namespace v = contractlab::verify;
  static const std::vector<Criterion> all = {
      {1, "hidden-set-formula", 1, v::hidden_set_formula},
      {2, "hidden-set-unsuccessful-bound", 30, v::hidden_set_unsuccessful_bound},
      {3, "clique-best-response", 60, v::clique_best_response},
      {4, "clique-approximation", 60, v::clique_approximation},
      {5, "planted-cover-multiagent", 10, v::planted_cover_multiagent},
      {6, "planted-cover-multiaction", 10, v::planted_cover_multiaction},
      {7, "ptas-pseudosymmetric", 60, v::ptas_pseudosymmetric},
      {8, "kprover-toy", 30, v::kprover_toy},
      {9, "multiaction-grid-oracle", 120, v::multiaction_grid_oracle},
      {10, "analytic-inequalities", 5, v::analytic_inequalities},
      {11, "hidden-set-monte-carlo", 30, v::hidden_set_monte_carlo},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional argument: a single criterion number.
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  const VerifyConfig config;
  int failed = 0;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    const contractlab::verify::Suite suite{c.name, {}, {}, c.run};
    const SuiteResult r = contractlab::verify::run_suite(suite, config);
    const bool in_time = r.seconds < c.limit_seconds;
    const bool ok = r.passed() && in_time;
    failed += ok ? 0 : 1;
    std::printf("%s criterion %2d %-30s %8.3f s (limit %g s)\n", ok ? "PASS" : "FAIL", c.id, c.name, r.seconds,
                c.limit_seconds);
    for (const auto& check : r.checks) {
      std::printf("       %s %s: %s\n", check.passed ? "ok  " : "FAIL", check.check.c_str(), check.detail.c_str());
    }
    if (!in_time) std::printf("       FAIL runtime over the limit\n");
  }
  std::printf("%d of %d criteria failed\n", failed, only != 0 ? 1 : static_cast<int>(criteria().size()));
  return failed == 0 ? 0 : 1;
}
