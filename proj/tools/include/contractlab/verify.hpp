#pragma once

// Property suites shared by `contractlab verify` and the acceptance binary.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "contractlab/caps.hpp"

namespace contractlab::verify {

struct VerifyConfig {
  std::uint64_t seed = 20240601;
  std::size_t trials = 100000;
  Caps caps;
};

struct CheckResult {
  std::string check;
  bool passed = true;
  double metric = 0;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0;

  bool passed() const;
  void add(std::string check, bool passed, double metric = 0, std::string detail = {});
};

struct Suite {
  std::string name;
  std::vector<std::string> aliases;
  std::string summary;
  std::function<SuiteResult(const VerifyConfig&)> run;
};

const std::vector<Suite>& suites();
// Matches names and aliases; nullptr when unknown.
const Suite* find_suite(const std::string& name);
// Runs one suite and records its wall time.
SuiteResult run_suite(const Suite& suite, const VerifyConfig& config);

// suite,check,passed,metric,detail with a header row.
void write_csv(std::ostream& out, const std::vector<SuiteResult>& results);

// Individual suites, exposed for the acceptance binary.
SuiteResult hidden_set_formula(const VerifyConfig& config);
SuiteResult hidden_set_unsuccessful_bound(const VerifyConfig& config);
SuiteResult clique_best_response(const VerifyConfig& config);
SuiteResult clique_approximation(const VerifyConfig& config);
SuiteResult planted_cover_multiagent(const VerifyConfig& config);
SuiteResult planted_cover_multiaction(const VerifyConfig& config);
SuiteResult ptas_pseudosymmetric(const VerifyConfig& config);
SuiteResult kprover_toy(const VerifyConfig& config);
SuiteResult multiaction_grid_oracle(const VerifyConfig& config);
SuiteResult analytic_inequalities(const VerifyConfig& config);
SuiteResult hidden_set_monte_carlo(const VerifyConfig& config);

SuiteResult setfn_properties(const VerifyConfig& config);
SuiteResult multiagent_properties(const VerifyConfig& config);
SuiteResult multiaction_properties(const VerifyConfig& config);
SuiteResult gadget_properties(const VerifyConfig& config);
SuiteResult clique_threshold(const VerifyConfig& config);

// Monte Carlo estimate of Pr[a fixed set of the given size is a successful
// query] over a uniform good set.
struct SuccessEstimate {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t set_size = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0;
  double stderr_ = 0;
  double bound = 0;       // e^{-sqrt(m)/4}
  double exact_tail = 0;  // hypergeometric Pr[|S & G| > sqrt(m)], 0 when the size test fails
  bool bound_claimed = false;  // n >= 512
};
SuccessEstimate estimate_success(std::size_t n, std::size_t set_size, std::size_t trials, std::uint64_t seed);

}  // namespace contractlab::verify
