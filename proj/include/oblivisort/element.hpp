#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace oblivisort {

/// A sortable key paired with its 1-based position in the original input.
/// Ordering is lexicographic on (key, origin), so arrays with duplicate keys
/// still carry a strict total order: no two elements of one array compare
/// equal.
struct TaggedElement {
  std::int64_t key = 0;
  std::uint64_t origin = 0;

  friend constexpr auto operator<=>(const TaggedElement&,
                                    const TaggedElement&) = default;
};

/// Wraps raw keys as TaggedElements with origins 1..n in input order.
inline std::vector<TaggedElement> tag_keys(std::span<const std::int64_t> keys) {
  std::vector<TaggedElement> out;
  out.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    out.push_back({keys[i], i + 1});
  return out;
}

inline std::vector<std::int64_t> keys_of(std::span<const TaggedElement> elems) {
  std::vector<std::int64_t> out;
  out.reserve(elems.size());
  for (const auto& e : elems) out.push_back(e.key);
  return out;
}

inline bool elements_sorted(std::span<const TaggedElement> a) {
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] < a[i - 1]) return false;
  return true;
}

}  // namespace oblivisort
