#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>

#include "oblivisort/contract.hpp"
#include "oblivisort/element.hpp"

namespace oblivisort {

/// Compare-exchange gate over 1-based positions: after the call the element
/// at min(i, j) is the lexicographically smaller of the two. Returns whether
/// a swap occurred. One call counts as one comparison.
inline bool compare_exchange(std::span<TaggedElement> a, std::size_t i,
                             std::size_t j) {
  require(i >= 1 && i <= a.size() && j >= 1 && j <= a.size(),
          "compare_exchange: index out of bounds");
  require(i != j, "compare_exchange: i and j must differ");
  const std::size_t lo = std::min(i, j) - 1;
  const std::size_t hi = std::max(i, j) - 1;
  if (a[hi] < a[lo]) {
    std::swap(a[lo], a[hi]);
    return true;
  }
  return false;
}

}  // namespace oblivisort
