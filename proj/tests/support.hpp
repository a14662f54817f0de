#pragma once

#include <initializer_list>
#include <vector>

#include "contractlab/item_set.hpp"
#include "contractlab/numeric.hpp"

namespace contractlab::testing {

inline Rational Q(std::int64_t p, std::int64_t q = 1) { return Rational(BigInt(p), BigInt(q)); }

// 1-based members, as in the examples.
inline ItemSet S(std::size_t n, std::initializer_list<std::size_t> members) {
  ItemSet s(n);
  for (std::size_t i : members) s.insert(i - 1);
  return s;
}

}  // namespace contractlab::testing
