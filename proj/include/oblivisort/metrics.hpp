#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "oblivisort/contract.hpp"
#include "oblivisort/element.hpp"
#include "oblivisort/rng.hpp"

namespace oblivisort {

/// Inversion census of an array. `total` counts out-of-order pairs;
/// `per_index` (when present) counts the inversions touching each position,
/// and satisfies sum(per_index) == 2 * total.
struct InversionProfile {
  std::uint64_t total = 0;
  std::optional<std::vector<std::uint64_t>> per_index;
};

/// per_index is tallied by a direct O(n^2) scan and omitted above this size.
inline constexpr std::size_t kPerIndexLimit = 4096;

namespace detail {

inline std::uint64_t merge_count(std::vector<TaggedElement>& a,
                                 std::vector<TaggedElement>& tmp,
                                 std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = merge_count(a, tmp, lo, mid) + merge_count(a, tmp, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[j] < a[i]) {
      count += mid - i;
      tmp[k++] = a[j++];
    } else {
      tmp[k++] = a[i++];
    }
  }
  while (i < mid) tmp[k++] = a[i++];
  while (j < hi) tmp[k++] = a[j++];
  std::copy(tmp.begin() + static_cast<std::ptrdiff_t>(lo),
            tmp.begin() + static_cast<std::ptrdiff_t>(hi),
            a.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace detail

/// Total inversion count by merge counting, O(n log n).
inline std::uint64_t inversion_total(std::span<const TaggedElement> a) {
  std::vector<TaggedElement> work(a.begin(), a.end());
  std::vector<TaggedElement> tmp(work.size());
  return detail::merge_count(work, tmp, 0, work.size());
}

inline InversionProfile inversion_count(std::span<const TaggedElement> a) {
  InversionProfile p;
  p.total = inversion_total(a);
  if (a.size() <= kPerIndexLimit) {
    std::vector<std::uint64_t> per(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i + 1; j < a.size(); ++j)
        if (a[j] < a[i]) {
          ++per[i];
          ++per[j];
        }
    p.per_index = std::move(per);
  }
  return p;
}

// -- input generators ---------------------------------------------------

/// (2, 1, 4, 3, ..., n, n-1): n/2 inversions, every element in exactly one.
inline std::vector<TaggedElement> adversarial_input(std::size_t n) {
  require(n % 2 == 0, "adversarial_input: n must be even");
  std::vector<TaggedElement> out(n);
  for (std::size_t p = 0; p < n / 2; ++p) {
    out[2 * p] = {static_cast<std::int64_t>(2 * p + 2), 2 * p + 1};
    out[2 * p + 1] = {static_cast<std::int64_t>(2 * p + 1), 2 * p + 2};
  }
  return out;
}

inline std::vector<TaggedElement> sorted_input(std::size_t n) {
  std::vector<TaggedElement> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = {static_cast<std::int64_t>(i + 1), i + 1};
  return out;
}

inline std::vector<TaggedElement> reverse_input(std::size_t n) {
  std::vector<TaggedElement> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = {static_cast<std::int64_t>(n - i), i + 1};
  return out;
}

/// Unbiased Fisher-Yates shuffle of the keys 1..n.
inline std::vector<TaggedElement> random_permutation(std::size_t n,
                                                     RngStream& rng) {
  std::vector<std::int64_t> keys(n);
  std::iota(keys.begin(), keys.end(), std::int64_t{1});
  for (std::size_t i = n; i >= 2; --i) {
    const auto j = static_cast<std::size_t>(
        uniform_in_range(rng, 1, static_cast<std::int64_t>(i)));
    std::swap(keys[i - 1], keys[j - 1]);
  }
  return tag_keys(keys);
}

/// 0-1 array with exactly k ones placed at the front (maximally unsorted).
inline std::vector<TaggedElement> zero_one_pattern(std::size_t n,
                                                   std::size_t k) {
  require(k <= n, "zero_one_pattern: k must be in [0, n]");
  std::vector<TaggedElement> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = {i < k ? std::int64_t{1} : std::int64_t{0}, i + 1};
  return out;
}

/// 0-1 array with exactly k ones at uniformly random positions.
inline std::vector<TaggedElement> zero_one_random(std::size_t n, std::size_t k,
                                                  RngStream& rng) {
  require(k <= n, "zero_one_random: k must be in [0, n]");
  std::vector<std::int64_t> keys(n, 0);
  std::fill(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(k), 1);
  for (std::size_t i = n; i >= 2; --i) {
    const auto j = static_cast<std::size_t>(
        uniform_in_range(rng, 1, static_cast<std::int64_t>(i)));
    std::swap(keys[i - 1], keys[j - 1]);
  }
  return tag_keys(keys);
}

// -- diagnostics mirroring the analysis ---------------------------------

enum class SpinPhase { phase1, phase2, phase3 };

/// Classifies a round of the round-robin sort by its inversion mass M:
/// phase 1 while M >= 12 n log2 n, phase 3 once M < 12 n, phase 2 between.
inline SpinPhase spin_phase_of(std::uint64_t inversions, std::size_t n) {
  require(n >= 2, "spin_phase_of: n must be >= 2");
  const double m = static_cast<double>(inversions);
  const double nd = static_cast<double>(n);
  if (m >= 12.0 * nd * std::log2(nd)) return SpinPhase::phase1;
  if (m < 12.0 * nd) return SpinPhase::phase3;
  return SpinPhase::phase2;
}

enum class RegionClass { low, high, mixed };

/// One contiguous block of a partitioned 0-1 array. `dirtiness` counts the
/// cells holding the wrong value for the block's side of the crossover
/// point (block size for a mixed block, which trivially meets its bound);
/// `distance` is the number of regions strictly between this block and the
/// crossover/mixed region on its level.
struct Region {
  std::size_t first = 0;  // 1-based inclusive span
  std::size_t last = 0;
  RegionClass cls = RegionClass::low;
  std::uint64_t dirtiness = 0;
  std::uint64_t desired_bound = 0;
  std::size_t distance = 0;
};

struct RegionReport {
  std::size_t depth = 0;
  std::size_t ones = 0;
  std::vector<Region> regions;
};

/// Desired dirtiness bound for a region at depth d whose distance from the
/// crossover/mixed region is j: n / 2^(d+j+3) for j >= 2, n / (5 * 2^d) for
/// j == 1, and the trivial bound (the region's size) for j == 0. Exact
/// rationals rounded down.
inline std::uint64_t desired_dirtiness(std::size_t n, std::size_t depth,
                                       std::size_t j,
                                       std::uint64_t region_size) {
  if (j == 0) return region_size;
  if (j == 1)
    return depth >= 61 ? 0
                       : static_cast<std::uint64_t>(n) /
                             (std::uint64_t{5} << depth);
  const std::size_t shift = depth + j + 3;
  return shift >= 64 ? 0 : static_cast<std::uint64_t>(n) >> shift;
}

/// Splits a 0-1 array into 2^depth contiguous regions (sizes differing by at
/// most one) and classifies each against the crossover point implied by the
/// number of ones. Instrumentation only: nothing here is consulted by the
/// sorting algorithms.
inline RegionReport region_report(std::span<const TaggedElement> a,
                                  std::size_t depth) {
  const std::size_t n = a.size();
  require(depth < 64 && (std::uint64_t{1} << depth) <= n,
          "region_report: need 2^depth <= n");
  for (const auto& e : a)
    require(e.key == 0 || e.key == 1, "region_report: keys must be 0 or 1");
  RegionReport report;
  report.depth = depth;
  for (const auto& e : a) report.ones += e.key == 1;
  const std::size_t k = report.ones;
  const std::size_t crossover = n - k;  // last cell that should hold a zero
  const std::size_t count = std::size_t{1} << depth;

  std::vector<Region> regions(count);
  std::optional<std::size_t> mixed_at;
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t begin = r * n / count;      // 0-based half-open
    const std::size_t end = (r + 1) * n / count;
    Region& region = regions[r];
    region.first = begin + 1;
    region.last = end;
    std::uint64_t ones = 0;
    for (std::size_t i = begin; i < end; ++i) ones += a[i].key == 1;
    if (end <= crossover) {
      region.cls = RegionClass::low;
      region.dirtiness = ones;
    } else if (begin >= crossover) {
      region.cls = RegionClass::high;
      region.dirtiness = (end - begin) - ones;
    } else {
      region.cls = RegionClass::mixed;
      region.dirtiness = end - begin;
      mixed_at = r;
    }
  }
  // When no region straddles the crossover it falls on a region boundary;
  // distances then count the regions strictly between a region and that
  // boundary.
  std::size_t boundary = count;  // index of the first high region
  for (std::size_t s = 0; s < count; ++s)
    if (regions[s].cls == RegionClass::high) {
      boundary = s;
      break;
    }
  for (std::size_t r = 0; r < count; ++r) {
    Region& region = regions[r];
    if (mixed_at) {
      region.distance = r == *mixed_at ? 0
                        : r < *mixed_at ? *mixed_at - r - 1
                                        : r - *mixed_at - 1;
    } else {
      region.distance = r < boundary ? boundary - 1 - r : r - boundary;
    }
    region.desired_bound = desired_dirtiness(
        n, depth, region.distance,
        static_cast<std::uint64_t>(region.last - region.first + 1));
  }
  report.regions = std::move(regions);
  return report;
}

/// Total dirtiness of a 0-1 array with every cell its own region: the
/// number of cells holding the wrong value for the sorted arrangement.
inline std::uint64_t leaf_dirtiness(std::span<const TaggedElement> a) {
  std::size_t k = 0;
  for (const auto& e : a) {
    require(e.key == 0 || e.key == 1, "leaf_dirtiness: keys must be 0 or 1");
    k += e.key == 1;
  }
  const std::size_t crossover = a.size() - k;
  std::uint64_t dirt = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    dirt += a[i].key != (i < crossover ? 0 : 1);
  return dirt;
}

}  // namespace oblivisort
