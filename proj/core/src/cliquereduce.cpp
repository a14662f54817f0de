#include "contractlab/cliquereduce.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <variant>

#include "contractlab/errors.hpp"
#include "contractlab/multiaction.hpp"

namespace contractlab::cliquereduce {
namespace {

void extend(const std::vector<Word>& adj, std::size_t size, Word candidates, std::size_t& best) {
  if (candidates == 0) {
    best = std::max(best, size);
    return;
  }
  while (candidates != 0) {
    if (size + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
    const auto v = static_cast<std::size_t>(std::countr_zero(candidates));
    candidates &= candidates - 1;
    extend(adj, size + 1, candidates & adj[v], best);
  }
}

}  // namespace

ContractOracle exact_oracle() {
  return {"exact", Rational(1), [](const MultiActionInstance<Rational>& inst) {
            return multiaction::solve_exact(inst).alpha;
          }};
}

ContractOracle degraded_oracle(const Rational& beta) {
  return {"degraded", beta, [beta](const MultiActionInstance<Rational>& inst) {
            const auto optimum = multiaction::solve_exact(inst);
            const auto* gadget = std::get_if<setfn::CliqueGadgetFn>(&inst.f.repr());
            if (gadget == nullptr) return optimum.alpha;
            const Rational& m = gadget->big_m();
            const multiaction::ActionProfile<Rational> profile(inst);
            const Rational target = beta * optimum.principal_utility;
            std::optional<Rational> worst;
            Rational worst_u;
            for (const Rational& a : {m / (m + Rational(1) + gadget->epsilon()), m / (m + Rational(1))}) {
              const Rational u = profile.principal_utility(a);
              if (u >= target && (!worst || u < worst_u)) {
                worst = a;
                worst_u = u;
              }
            }
            return worst.value_or(optimum.alpha);
          }};
}

std::string to_string(CliqueVerdict v) { return v == CliqueVerdict::small ? "SMALL" : "LARGE"; }

CliqueVerdict classify(const Rational& alpha, const Rational& big_m) {
  return alpha < big_m / (big_m + Rational(1)) ? CliqueVerdict::small : CliqueVerdict::large;
}

DistinguishResult distinguish(const Graph& g, std::size_t delta, const Rational& beta, const ContractOracle& oracle) {
  if (!(beta > Rational(0) && beta < Rational(1))) throw InvalidArgument("beta must lie in (0, 1)");
  if (oracle.beta < beta) {
    throw InvalidArgument("oracle '" + oracle.name + "' only guarantees beta = " + contractlab::to_string(oracle.beta));
  }
  const auto gadget = gadgets::clique_xos_instance(g, delta, beta);
  const Rational alpha = oracle.solve(gadget.instance);
  if (alpha < Rational(0) || alpha > Rational(1)) throw InvalidArgument("oracle returned alpha outside [0, 1]");
  const Rational threshold = gadget.big_m / (gadget.big_m + Rational(1));
  return {classify(alpha, gadget.big_m), alpha, threshold, delta};
}

ApproxResult approx_clique(const Graph& g, const Rational& beta, const ContractOracle& oracle) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw InvalidArgument("graph must have at least one vertex");
  ApproxResult out;
  const auto rounds = static_cast<std::size_t>(std::bit_width(n));  // floor(log2 n) + 1
  for (std::size_t i = 0; i < rounds; ++i) out.rounds.push_back(distinguish(g, std::size_t{1} << i, beta, oracle));
  out.estimate = 1;
  if (out.rounds.front().verdict == CliqueVerdict::large) {
    for (const auto& r : out.rounds) {
      if (r.verdict == CliqueVerdict::large) out.estimate = r.delta;
    }
  }
  return out;
}

std::size_t max_clique_bruteforce(const Graph& g, const Caps& caps) {
  const std::size_t n = g.vertex_count();
  require_within_cap(n, caps.enumerate, "max clique");
  if (n == 0) return 0;
  std::vector<Word> adj(n);
  for (std::size_t v = 0; v < n; ++v) adj[v] = g.neighbours(v)[0];
  std::size_t best = 0;
  const Word all = n == 64 ? ~Word{0} : (Word{1} << n) - 1;
  extend(adj, 0, all, best);
  return best;
}

}  // namespace contractlab::cliquereduce
