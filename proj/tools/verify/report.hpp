#pragma once

#include <sstream>
#include <string>

#include "contractlab/numeric.hpp"
#include "contractlab/verify.hpp"

namespace contractlab::verify::detail {

template <class... Args>
std::string cat(const Args&... args) {
  std::ostringstream out;
  out.precision(12);
  (out << ... << args);
  return out.str();
}

inline std::string str(const Rational& q) { return contractlab::to_string(q); }

// Counts a repeated check and keeps its first failure.
struct Tally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string witness;

  void record(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      if (failed == 0) witness = what;
      ++failed;
    }
  }
  void report(SuiteResult& r, const std::string& check) const {
    r.add(check, failed == 0, static_cast<double>(checked),
          failed == 0 ? cat(checked, " cases") : cat(failed, "/", checked, " failed; first: ", witness));
  }
};

}  // namespace contractlab::verify::detail
