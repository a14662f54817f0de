#include "contractlab/kprover.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>

#include "contractlab/errors.hpp"

namespace contractlab::kprover {
namespace {

constexpr std::uint64_t kCoverBytesCap = std::uint64_t{512} << 20;

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap, const char* what) {
  std::uint64_t out = 1;
  for (std::uint64_t e = 0; e < exp; ++e) {
    if (base != 0 && out > cap / base) throw CapExceeded(std::string(what) + " exceeds the desk cap");
    out *= base;
  }
  return out;
}

std::size_t var_of(int literal) { return static_cast<std::size_t>(std::abs(literal)) - 1; }

}  // namespace

void Formula3CNF5::validate() const {
  if (n_vars == 0 || n_vars % 3 != 0) throw InvalidArgument("3CNF-5 formulas need a positive multiple of 3 variables");
  if (clauses.size() != 5 * n_vars / 3) {
    throw InvalidArgument("expected " + std::to_string(5 * n_vars / 3) + " clauses, got " +
                          std::to_string(clauses.size()));
  }
  std::vector<int> occurrences(n_vars, 0);
  for (std::size_t c = 0; c < clauses.size(); ++c) {
    const auto& cl = clauses[c];
    for (int lit : cl) {
      if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > n_vars) {
        throw InvalidArgument("clause " + std::to_string(c + 1) + " has an out-of-range literal");
      }
      ++occurrences[var_of(lit)];
    }
    if (var_of(cl[0]) == var_of(cl[1]) || var_of(cl[0]) == var_of(cl[2]) || var_of(cl[1]) == var_of(cl[2])) {
      throw InvalidArgument("clause " + std::to_string(c + 1) + " repeats a variable");
    }
  }
  for (std::size_t v = 0; v < n_vars; ++v) {
    if (occurrences[v] != 5) {
      throw InvalidArgument("variable " + std::to_string(v + 1) + " occurs in " + std::to_string(occurrences[v]) +
                            " clauses instead of 5");
    }
  }
}

bool Formula3CNF5::satisfied_by(const std::vector<bool>& assignment) const {
  if (assignment.size() != n_vars) throw DimensionError("assignment length does not match the formula");
  return std::all_of(clauses.begin(), clauses.end(), [&](const auto& cl) {
    return std::any_of(cl.begin(), cl.end(), [&](int lit) { return assignment[var_of(lit)] == (lit > 0); });
  });
}

Formula3CNF5 toy_formula() {
  return Formula3CNF5{3, {{1, 2, 3}, {-1, 2, 3}, {1, -2, 3}, {1, 2, -3}, {-1, -2, 3}}};
}

void KProverParams::validate() const {
  if (k == 0) throw InvalidArgument("k must be positive");
  if (ell == 0 || ell % 2 != 0) throw InvalidArgument("ell must be a positive even number");
  if (ell > 10) throw CapExceeded("ell > 10 is beyond desk scale");
  if (codewords.size() != k) throw InvalidArgument("need exactly k codewords");
  for (std::size_t a = 0; a < k; ++a) {
    const auto& w = codewords[a];
    if (w.size() != ell) throw InvalidArgument("codeword " + std::to_string(a + 1) + " has the wrong length");
    std::size_t weight = 0;
    for (auto bit : w) {
      if (bit > 1) throw InvalidArgument("codewords must be binary");
      weight += bit;
    }
    if (weight != ell / 2) throw InvalidArgument("codeword " + std::to_string(a + 1) + " does not have weight ell/2");
    for (std::size_t b = 0; b < a; ++b) {
      std::size_t dist = 0;
      for (std::size_t j = 0; j < ell; ++j) dist += codewords[b][j] != w[j];
      if (3 * dist < ell) {
        throw InvalidArgument("codewords " + std::to_string(b + 1) + " and " + std::to_string(a + 1) +
                              " are closer than ell/3");
      }
    }
  }
}

KProverParams KProverParams::greedy(std::size_t k, std::size_t ell) {
  if (ell == 0 || ell % 2 != 0) throw InvalidArgument("ell must be a positive even number");
  if (ell > 10) throw CapExceeded("ell > 10 is beyond desk scale");
  KProverParams out{k, ell, {}};
  for (std::uint32_t x = (1U << ell); x-- > 0 && out.codewords.size() < k;) {
    if (static_cast<std::size_t>(std::popcount(x)) != ell / 2) continue;
    std::vector<std::uint8_t> w(ell);
    for (std::size_t j = 0; j < ell; ++j) w[j] = (x >> (ell - 1 - j)) & 1U;
    const bool far = std::all_of(out.codewords.begin(), out.codewords.end(), [&](const auto& c) {
      std::size_t dist = 0;
      for (std::size_t j = 0; j < ell; ++j) dist += c[j] != w[j];
      return 3 * dist >= ell;
    });
    if (far) out.codewords.push_back(std::move(w));
  }
  if (out.codewords.size() < k) {
    throw InvalidArgument("no codebook of " + std::to_string(k) + " words found for ell = " + std::to_string(ell));
  }
  return out;
}

std::uint64_t KProverCoverage::element(const std::vector<std::size_t>& coords, std::uint64_t r) const {
  std::uint64_t offset = 0;
  for (std::size_t j = big_l; j-- > 0;) offset = offset * params.k + coords[j];
  return r * block_size + offset;
}

ItemSet KProverCoverage::block(std::uint64_t r, std::size_t j, std::size_t i) const {
  ItemSet out(coverage.universe_size);
  std::uint64_t stride = 1;
  for (std::size_t t = 0; t < j; ++t) stride *= params.k;
  for (std::uint64_t off = 0; off < block_size; ++off) {
    if ((off / stride) % params.k == i) out.insert(r * block_size + off);
  }
  return out;
}

ItemSet KProverCoverage::randomness_slice(std::uint64_t r) const {
  ItemSet out(coverage.universe_size);
  for (std::uint64_t off = 0; off < block_size; ++off) out.insert(r * block_size + off);
  return out;
}

std::uint64_t KProverCoverage::question_of(std::uint64_t r, std::size_t prover) const {
  const std::size_t ell = params.ell;
  const std::uint64_t nc = formula.clauses.size();
  const std::uint64_t nv = formula.n_vars;
  std::uint64_t clause_part = 0, clause_scale = 1, var_part = 0, var_scale = 1;
  std::uint64_t rc = r;
  std::uint64_t rp = r;
  for (std::size_t j = 0; j < ell; ++j) rp /= nc;
  for (std::size_t j = 0; j < ell; ++j) {
    const std::uint64_t c = rc % nc;
    rc /= nc;
    const std::uint64_t p = rp % 3;
    rp /= 3;
    if (params.codewords[prover][j] == 1) {
      clause_part += c * clause_scale;
      clause_scale *= nc;
    } else {
      var_part += var_of(formula.clauses[c][p]) * var_scale;
      var_scale *= nv;
    }
  }
  return clause_part + clause_scale * var_part;
}

bool KProverCoverage::valid_answer(std::uint64_t question, std::uint32_t answer) const {
  const std::size_t half = params.ell / 2;
  const std::uint64_t nc = formula.clauses.size();
  if ((answer >> (2 * params.ell)) != 0) return false;
  std::uint64_t q = question;
  for (std::size_t t = 0; t < half; ++t) {
    const auto& cl = formula.clauses[q % nc];
    q /= nc;
    bool sat = false;
    for (std::size_t b = 0; b < 3; ++b) sat = sat || (((answer >> (3 * t + b)) & 1U) == (cl[b] > 0 ? 1U : 0U));
    if (!sat) return false;
  }
  return true;
}

std::size_t KProverCoverage::rho(std::uint64_t r, std::uint64_t question, std::uint32_t answer,
                                 std::size_t prover) const {
  if (question_of(r, prover) != question) throw PreconditionError("question does not match the randomness");
  const std::size_t ell = params.ell;
  const std::size_t half = ell / 2;
  const std::uint64_t nc = formula.clauses.size();
  std::uint64_t rp = r;
  for (std::size_t j = 0; j < ell; ++j) rp /= nc;
  std::size_t clause_q = 0, var_q = 0, index = 0;
  for (std::size_t j = 0; j < ell; ++j) {
    const std::uint64_t p = rp % 3;
    rp /= 3;
    std::uint32_t bit;
    if (params.codewords[prover][j] == 1) {
      bit = (answer >> (3 * clause_q + p)) & 1U;
      ++clause_q;
    } else {
      bit = (answer >> (3 * half + var_q)) & 1U;
      ++var_q;
    }
    index |= static_cast<std::size_t>(bit) << j;
  }
  return index;
}

std::size_t KProverCoverage::item_index(const Item& item) const {
  auto it = index_.find({item.question, item.answer, item.prover});
  if (it == index_.end()) throw InvalidArgument("no such item (invalid answer or question)");
  return it->second;
}

KProverCoverage kprover_coverage(const Formula3CNF5& phi, const KProverParams& params) {
  phi.validate();
  params.validate();
  KProverCoverage cov;
  cov.formula = phi;
  cov.params = params;
  const std::size_t ell = params.ell;
  const std::uint64_t nc = phi.clauses.size();
  cov.big_l = std::size_t{1} << ell;
  cov.block_size = checked_pow(params.k, cov.big_l, kUniverseCap, "k^L");
  cov.randomness_count = checked_pow(nc * 3, ell, kUniverseCap, "|R|");
  if (cov.block_size > kUniverseCap / cov.randomness_count) {
    throw CapExceeded("|U| = k^L |R| exceeds the desk cap of " + std::to_string(kUniverseCap));
  }
  const std::uint64_t universe = cov.block_size * cov.randomness_count;
  cov.question_count =
      checked_pow(nc, ell / 2, kUniverseCap, "|Q|") * checked_pow(phi.n_vars, ell / 2, kUniverseCap, "|Q|");
  cov.k_prime = params.k * cov.question_count;

  std::vector<std::vector<std::uint32_t>> answers(cov.question_count);
  std::vector<std::size_t> offset(cov.question_count + 1, 0);
  for (std::uint64_t q = 0; q < cov.question_count; ++q) {
    for (std::uint32_t a = 0; a < (1U << (2 * ell)); ++a) {
      if (cov.valid_answer(q, a)) answers[q].push_back(a);
    }
    offset[q + 1] = offset[q] + answers[q].size() * params.k;
  }
  const std::uint64_t item_count = offset.back();
  if (item_count * words_for(universe) * sizeof(Word) > kCoverBytesCap) {
    throw CapExceeded("dense covers for " + std::to_string(item_count) + " items would exceed the memory cap");
  }
  cov.items.reserve(item_count);
  for (std::uint64_t q = 0; q < cov.question_count; ++q) {
    for (std::uint32_t a : answers[q]) {
      for (std::size_t i = 0; i < params.k; ++i) {
        cov.index_.emplace(std::make_tuple(q, a, i), cov.items.size());
        cov.items.push_back({q, a, i});
      }
    }
  }

  // offsets inside U_r with coordinate j equal to i
  std::vector<std::vector<std::vector<std::uint64_t>>> pattern(cov.big_l, std::vector<std::vector<std::uint64_t>>(params.k));
  std::uint64_t stride = 1;
  for (std::size_t j = 0; j < cov.big_l; ++j) {
    for (std::uint64_t off = 0; off < cov.block_size; ++off) pattern[j][(off / stride) % params.k].push_back(off);
    stride *= params.k;
  }

  cov.coverage.universe_size = universe;
  cov.coverage.covers.assign(item_count, ItemSet(universe));
  for (std::uint64_t r = 0; r < cov.randomness_count; ++r) {
    for (std::size_t i = 0; i < params.k; ++i) {
      const std::uint64_t q = cov.question_of(r, i);
      for (std::size_t pos = 0; pos < answers[q].size(); ++pos) {
        const std::uint32_t a = answers[q][pos];
        ItemSet& cover = cov.coverage.covers[offset[q] + pos * params.k + i];
        for (std::uint64_t off : pattern[cov.rho(r, q, a, i)][i]) cover.insert(r * cov.block_size + off);
      }
    }
  }
  return cov;
}

ItemSet planted_assignment_set(const KProverCoverage& cov, const std::vector<bool>& assignment) {
  if (assignment.size() != cov.formula.n_vars) throw DimensionError("assignment length does not match the formula");
  const std::size_t half = cov.params.ell / 2;
  const std::uint64_t nc = cov.formula.clauses.size();
  const std::uint64_t nv = cov.formula.n_vars;
  ItemSet out(cov.items.size());
  for (std::uint64_t q = 0; q < cov.question_count; ++q) {
    std::uint32_t a = 0;
    std::uint64_t rest = q;
    for (std::size_t t = 0; t < half; ++t) {
      const auto& cl = cov.formula.clauses[rest % nc];
      rest /= nc;
      for (std::size_t b = 0; b < 3; ++b) a |= static_cast<std::uint32_t>(assignment[var_of(cl[b])]) << (3 * t + b);
    }
    for (std::size_t t = 0; t < half; ++t) {
      a |= static_cast<std::uint32_t>(assignment[rest % nv]) << (3 * half + t);
      rest /= nv;
    }
    if (!cov.valid_answer(q, a)) throw InvalidArgument("assignment violates a clause of the formula");
    for (std::size_t i = 0; i < cov.params.k; ++i) out.insert(cov.item_index({q, a, i}));
  }
  return out;
}

BlockClaimReport verify_block_claims(const KProverCoverage& cov, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick_r(0, cov.randomness_count - 1);
  std::uniform_int_distribution<std::size_t> pick_j(0, cov.big_l - 1);
  std::uniform_int_distribution<std::size_t> pick_i(0, cov.params.k - 1);
  std::uniform_int_distribution<std::size_t> pick_size(1, cov.big_l);
  const std::uint64_t k = cov.params.k;
  BlockClaimReport report;
  auto fail = [&](std::string msg) {
    if (report.passed) report.witness = std::move(msg);
    report.passed = false;
  };

  for (std::size_t s = 0; s < samples; ++s) {
    const std::uint64_t r = pick_r(rng);
    const std::size_t j = pick_j(rng);
    ItemSet all(cov.coverage.universe_size);
    for (std::size_t i = 0; i < k; ++i) all |= cov.block(r, j, i);
    ++report.union_checks;
    if (!(all == cov.randomness_slice(r)) || all.size() != cov.block_size) {
      fail("union over provers of B(r=" + std::to_string(r) + ", j=" + std::to_string(j + 1) + ", i) has " +
           std::to_string(all.size()) + " elements, expected U_r");
    }
  }

  std::vector<std::size_t> coords(cov.big_l);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::uint64_t r = pick_r(rng);
    const std::size_t size = pick_size(rng);
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    for (std::size_t t = 0; t < size; ++t) {
      std::uniform_int_distribution<std::size_t> pick(t, cov.big_l - 1);
      std::swap(coords[t], coords[pick(rng)]);
    }
    ItemSet uni(cov.coverage.universe_size);
    for (std::size_t t = 0; t < size; ++t) uni |= cov.block(r, coords[t], pick_i(rng));
    std::uint64_t missing = 1;
    for (std::size_t t = 0; t < size; ++t) missing *= k - 1;
    for (std::size_t t = size; t < cov.big_l; ++t) missing *= k;
    const std::uint64_t expected = cov.block_size - missing;
    ++report.family_checks;
    if (uni.size() != expected) {
      fail("family of " + std::to_string(size) + " blocks at r=" + std::to_string(r) + " covers " +
           std::to_string(uni.size()) + ", expected " + std::to_string(expected));
    }
  }
  return report;
}

}  // namespace contractlab::kprover
