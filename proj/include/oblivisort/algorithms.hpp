#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "oblivisort/compare_exchange.hpp"
#include "oblivisort/contract.hpp"
#include "oblivisort/element.hpp"
#include "oblivisort/metrics.hpp"
#include "oblivisort/rng.hpp"
#include "oblivisort/schedule.hpp"
#include "oblivisort/trace.hpp"

namespace oblivisort {

/// Per-run accounting. `comparisons` covers compare-exchange gates only;
/// sortedness scans are tallied separately in `scan_comparisons` and never
/// enter asymptotic fits.
struct SortReport {
  std::size_t n = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t swaps = 0;
  std::uint64_t rounds = 0;
  bool sorted = false;
  std::uint64_t initial_inversions = 0;
  std::uint64_t final_inversions = 0;
  std::uint64_t scan_comparisons = 0;
};

/// How spin_the_bottle_sort decides to stop: re-scan the array after each
/// round (data-dependent), or run a fixed round budget and stay
/// data-oblivious.
struct TerminationMode {
  enum class Kind { check_sorted, fixed_budget };
  Kind kind = Kind::check_sorted;
  std::uint64_t rounds = 0;

  static constexpr TerminationMode check_sorted() { return {}; }
  static constexpr TerminationMode fixed_budget(std::uint64_t rounds) {
    return {Kind::fixed_budget, rounds};
  }
};

struct PassStats {
  std::uint64_t comparisons = 0;
  std::uint64_t swaps = 0;
};

namespace detail {

inline bool scan_sorted(std::span<const TaggedElement> a,
                        std::uint64_t& scan_comparisons) {
  for (std::size_t i = 1; i < a.size(); ++i) {
    ++scan_comparisons;
    if (a[i] < a[i - 1]) return false;
  }
  return true;
}

}  // namespace detail

/// One round-robin round: every position i = 1..n compare-exchanges with a
/// partner drawn uniformly from the other n-1 positions. Exactly n
/// comparisons per round.
inline PassStats spin_round(std::span<TaggedElement> a, RngStream& rng,
                            Trace* recorder = nullptr) {
  const std::size_t n = a.size();
  require(n >= 2, "spin_round: need n >= 2");
  PassStats stats;
  for (std::size_t i = 1; i <= n; ++i) {
    // Drawing u from [1, n-1] and shifting past i makes s exactly uniform
    // on {1..n} \ {i}.
    const auto u = static_cast<std::size_t>(
        uniform_in_range(rng, 1, static_cast<std::int64_t>(n) - 1));
    const std::size_t s = u + (u >= i ? 1 : 0);
    if (recorder) recorder->record(i, s);
    ++stats.comparisons;
    stats.swaps += compare_exchange(a, i, s) ? 1 : 0;
  }
  return stats;
}

/// Round budget for the data-oblivious variant when the caller gives none:
/// ceil(4n + 2 n ln n).
inline std::uint64_t default_spin_budget(std::size_t n) {
  if (n < 2) return 0;
  const double nd = static_cast<double>(n);
  return static_cast<std::uint64_t>(std::ceil(4.0 * nd + 2.0 * nd * std::log(nd)));
}

/// Round-robin random compare-exchange sort. In check_sorted mode, rounds
/// repeat until a linear scan certifies order, so the report always comes
/// back sorted. In fixed_budget mode exactly the budgeted rounds run and the
/// recorded gate sequence depends only on (n, seed, budget), never on keys.
inline SortReport spin_the_bottle_sort(
    std::span<TaggedElement> a, RngStream& rng,
    TerminationMode mode = TerminationMode::check_sorted(),
    Trace* recorder = nullptr) {
  SortReport report;
  report.n = a.size();
  report.initial_inversions = inversion_total(a);
  if (recorder) recorder->wires = a.size();
  if (a.size() >= 2) {
    if (mode.kind == TerminationMode::Kind::check_sorted) {
      while (!detail::scan_sorted(a, report.scan_comparisons)) {
        const PassStats stats = spin_round(a, rng, recorder);
        report.comparisons += stats.comparisons;
        report.swaps += stats.swaps;
        ++report.rounds;
      }
    } else {
      for (std::uint64_t r = 0; r < mode.rounds; ++r) {
        const PassStats stats = spin_round(a, rng, recorder);
        report.comparisons += stats.comparisons;
        report.swaps += stats.swaps;
        ++report.rounds;
      }
    }
  }
  report.final_inversions = inversion_total(a);
  report.sorted = report.final_inversions == 0;
  return report;
}

/// One up-and-down pass at the given temperature with `repetitions` random
/// draws per position per direction. The up-pass compares each i = 1..n-1
/// against a partner in [i+1, min(n, i+T)]; the down-pass compares each
/// i = n..2 against a partner in [max(1, i-T), i-1]. Exactly 2 (n-1) r
/// comparisons.
inline PassStats annealing_pass(std::span<TaggedElement> a,
                                std::uint64_t temperature,
                                std::uint64_t repetitions, RngStream& rng,
                                Trace* recorder = nullptr) {
  const std::size_t n = a.size();
  require(n >= 2, "annealing_pass: need n >= 2");
  require(temperature >= 1, "annealing_pass: temperature must be >= 1");
  require(repetitions >= 1, "annealing_pass: repetitions must be >= 1");
  const std::uint64_t window = std::min<std::uint64_t>(temperature, n);
  PassStats stats;
  for (std::size_t i = 1; i + 1 <= n; ++i) {
    const auto hi = std::min<std::uint64_t>(n, i + window);
    for (std::uint64_t k = 0; k < repetitions; ++k) {
      const auto s = static_cast<std::size_t>(uniform_in_range(
          rng, static_cast<std::int64_t>(i) + 1, static_cast<std::int64_t>(hi)));
      if (recorder) recorder->record(i, s);
      ++stats.comparisons;
      stats.swaps += compare_exchange(a, i, s) ? 1 : 0;
    }
  }
  for (std::size_t i = n; i >= 2; --i) {
    const std::size_t lo = i > window ? i - window : 1;
    for (std::uint64_t k = 0; k < repetitions; ++k) {
      const auto s = static_cast<std::size_t>(uniform_in_range(
          rng, static_cast<std::int64_t>(lo), static_cast<std::int64_t>(i) - 1));
      if (recorder) recorder->record(s, i);
      ++stats.comparisons;
      stats.swaps += compare_exchange(a, s, i) ? 1 : 0;
    }
  }
  return stats;
}

/// Runs one annealing pass per schedule entry, hottest first, skipping
/// terminator entries. The gate sequence depends only on (n, seed,
/// schedule); total comparisons are exactly schedule_cost(schedule, n).
inline SortReport annealing_sort(std::span<TaggedElement> a,
                                 const AnnealingSchedule& schedule,
                                 RngStream& rng, Trace* recorder = nullptr) {
  if (auto violation = validate(schedule))
    throw contract_error("annealing_sort: invalid schedule: " + *violation);
  SortReport report;
  report.n = a.size();
  report.initial_inversions = inversion_total(a);
  if (recorder) recorder->wires = a.size();
  if (a.size() >= 2) {
    for (const ScheduleEntry& entry : schedule.entries) {
      if (entry.temperature < 1) continue;
      const PassStats stats =
          annealing_pass(a, entry.temperature, entry.repetitions, rng, recorder);
      report.comparisons += stats.comparisons;
      report.swaps += stats.swaps;
      ++report.rounds;
    }
  }
  report.final_inversions = inversion_total(a);
  report.sorted = report.final_inversions == 0;
  return report;
}

/// Compare-exchanges uniformly random unordered pairs, re-scanning for
/// sortedness every n draws, until sorted or the comparison budget runs out.
inline SortReport guess_sort(std::span<TaggedElement> a, RngStream& rng,
                             std::uint64_t max_comparisons) {
  const std::size_t n = a.size();
  require(n >= 2, "guess_sort: need n >= 2");
  SortReport report;
  report.n = n;
  report.initial_inversions = inversion_total(a);
  while (report.comparisons < max_comparisons) {
    if (detail::scan_sorted(a, report.scan_comparisons)) break;
    const std::uint64_t block =
        std::min<std::uint64_t>(n, max_comparisons - report.comparisons);
    for (std::uint64_t k = 0; k < block; ++k) {
      const auto i = static_cast<std::size_t>(
          uniform_in_range(rng, 1, static_cast<std::int64_t>(n)));
      const auto u = static_cast<std::size_t>(
          uniform_in_range(rng, 1, static_cast<std::int64_t>(n) - 1));
      const std::size_t s = u + (u >= i ? 1 : 0);
      ++report.comparisons;
      report.swaps += compare_exchange(a, i, s) ? 1 : 0;
    }
    ++report.rounds;
  }
  report.final_inversions = inversion_total(a);
  report.sorted = report.final_inversions == 0;
  return report;
}

/// Classic adjacent passes, each over the full array, until a pass performs
/// no swap.
inline SortReport bubble_sort(std::span<TaggedElement> a) {
  const std::size_t n = a.size();
  SortReport report;
  report.n = n;
  report.initial_inversions = inversion_total(a);
  if (n >= 2) {
    std::uint64_t pass_swaps;
    do {
      pass_swaps = 0;
      for (std::size_t i = 1; i < n; ++i) {
        ++report.comparisons;
        pass_swaps += compare_exchange(a, i, i + 1) ? 1 : 0;
      }
      report.swaps += pass_swaps;
      ++report.rounds;
    } while (pass_swaps > 0);
  }
  report.final_inversions = inversion_total(a);
  report.sorted = report.final_inversions == 0;
  return report;
}

/// Ground-truth comparison sort on the (key, origin) order.
inline std::vector<TaggedElement> oracle_sort(std::span<const TaggedElement> a) {
  std::vector<TaggedElement> out(a.begin(), a.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oblivisort
