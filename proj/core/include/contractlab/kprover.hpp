#pragma once

// Coverage function induced by the k-prover proof system for 3CNF-5 formulas.
//
// Randomness r = (c_1..c_ell, p_1..p_ell): ell clause indices and a literal
// position in each. Prover i asks clause c_j where its codeword has a 1 and
// the variable at position p_j of c_j otherwise. Questions list clause queries
// first, then variable queries. Answers carry 3 bits per clause query and 1
// bit per variable query.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "contractlab/item_set.hpp"
#include "contractlab/setfn.hpp"

namespace contractlab::kprover {

struct Formula3CNF5 {
  std::size_t n_vars = 0;
  std::vector<std::array<int, 3>> clauses;  // 1-based signed literals

  // n a multiple of 3, 5n/3 clauses, every variable in exactly 5 clauses,
  // no variable twice in one clause. Throws InvalidArgument.
  void validate() const;
  bool satisfied_by(const std::vector<bool>& assignment) const;
};

// The five-clause formula on three variables used for toy-scale checks; the
// all-true assignment satisfies it.
Formula3CNF5 toy_formula();

struct KProverParams {
  std::size_t k = 0;
  std::size_t ell = 0;
  std::vector<std::vector<std::uint8_t>> codewords;

  // ell even, k words of length ell and weight ell/2, pairwise distance >= ell/3.
  void validate() const;
  // Greedy over weight-ell/2 words in descending lexicographic order.
  static KProverParams greedy(std::size_t k, std::size_t ell);
};

struct Item {
  std::uint64_t question = 0;
  std::uint32_t answer = 0;  // bit b of the 2 ell answer bits at position b
  std::size_t prover = 0;
};

struct KProverCoverage {
  Formula3CNF5 formula;
  KProverParams params;
  setfn::CoverageFn coverage;
  std::vector<Item> items;
  std::size_t k_prime = 0;
  std::uint64_t question_count = 0;
  std::uint64_t randomness_count = 0;
  std::size_t big_l = 0;        // 2^ell
  std::uint64_t block_size = 0;  // k^L = |U_r|

  // Universe element (u_1..u_L, r) -> index r k^L + sum u_j k^(j-1), with u_j 0-based.
  std::uint64_t element(const std::vector<std::size_t>& coords, std::uint64_t r) const;
  // B(r, j, i) = {u : u_j = i, u_{L+1} = r}; j and i 0-based.
  ItemSet block(std::uint64_t r, std::size_t j, std::size_t i) const;
  ItemSet randomness_slice(std::uint64_t r) const;

  std::uint64_t question_of(std::uint64_t r, std::size_t prover) const;
  // Index in [L] of the distinguished-variable string for an answer.
  std::size_t rho(std::uint64_t r, std::uint64_t question, std::uint32_t answer, std::size_t prover) const;
  bool valid_answer(std::uint64_t question, std::uint32_t answer) const;
  std::size_t item_index(const Item& item) const;

 private:
  friend KProverCoverage kprover_coverage(const Formula3CNF5&, const KProverParams&);
  std::map<std::tuple<std::uint64_t, std::uint32_t, std::size_t>, std::size_t> index_;
};

inline constexpr std::uint64_t kUniverseCap = 10'000'000;

// Throws CapExceeded when |U| > kUniverseCap or the dense covers would not fit
// in memory; InvalidArgument for a bad formula or codebook.
KProverCoverage kprover_coverage(const Formula3CNF5& phi, const KProverParams& params);

// {(q, a(q), i)} where a(q) answers every question according to the assignment.
ItemSet planted_assignment_set(const KProverCoverage& cov, const std::vector<bool>& assignment);

struct BlockClaimReport {
  std::size_t union_checks = 0;
  std::size_t family_checks = 0;
  bool passed = true;
  std::string witness;
};

// Samples r and j for the union-over-provers claim and families with distinct
// coordinates for the partial-union count k^L - (k-1)^|I| k^(L-|I|).
BlockClaimReport verify_block_claims(const KProverCoverage& cov, std::size_t samples, std::uint64_t seed);

}  // namespace contractlab::kprover
