#pragma once

#include <cstddef>
#include <string>

namespace contractlab {

// Desk-scale limits for exhaustive work. All exhaustive operations take a Caps
// so the CLI can tighten or relax them with --cap-n.
struct Caps {
  std::size_t enumerate = 24;    // subset scans (demand, best response, exact solvers)
  std::size_t class_check = 16;  // monotone / submodular checks
  std::size_t pairwise = 12;     // pairwise breakpoint enumeration
};

// Throws CapExceeded when n > cap.
void require_within_cap(std::size_t n, std::size_t cap, const std::string& what);

}  // namespace contractlab
