#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "oblivisort/algorithms.hpp"
#include "oblivisort/contract.hpp"
#include "oblivisort/fit.hpp"
#include "oblivisort/metrics.hpp"
#include "oblivisort/rng.hpp"
#include "oblivisort/schedule.hpp"
#include "oblivisort/trace.hpp"

namespace oblivisort {

enum class Algo { spin, anneal, guess, bubble };
enum class InputKind { random, adversarial, reverse };

inline const char* algo_name(Algo a) {
  switch (a) {
    case Algo::spin: return "spin";
    case Algo::anneal: return "anneal";
    case Algo::guess: return "guess";
    case Algo::bubble: return "bubble";
  }
  return "?";
}

inline Algo parse_algo(const std::string& name) {
  if (name == "spin") return Algo::spin;
  if (name == "anneal") return Algo::anneal;
  if (name == "guess") return Algo::guess;
  if (name == "bubble") return Algo::bubble;
  throw contract_error("unknown algo: " + name);
}

inline InputKind parse_input_kind(const std::string& name) {
  if (name == "random") return InputKind::random;
  if (name == "adversarial") return InputKind::adversarial;
  if (name == "reverse") return InputKind::reverse;
  throw contract_error("unknown input kind: " + name);
}

/// One sort trial flattened for CSV or JSON output.
struct ExperimentRecord {
  std::string algo;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string schedule_id;
  std::uint64_t comparisons = 0;
  std::uint64_t swaps = 0;
  std::uint64_t rounds = 0;
  bool sorted = false;
  std::uint64_t wall_ns = 0;
};

inline constexpr const char* kCsvHeader =
    "algo,n,seed,schedule_id,comparisons,swaps,rounds,sorted,wall_ns";

inline std::string csv_line(const ExperimentRecord& r) {
  std::string out;
  out += r.algo;
  out += ',';
  out += std::to_string(r.n);
  out += ',';
  out += std::to_string(r.seed);
  out += ',';
  out += r.schedule_id;
  out += ',';
  out += std::to_string(r.comparisons);
  out += ',';
  out += std::to_string(r.swaps);
  out += ',';
  out += std::to_string(r.rounds);
  out += ',';
  out += r.sorted ? "true" : "false";
  out += ',';
  out += std::to_string(r.wall_ns);
  return out;
}

/// Deterministic per-trial seed from (master seed, size, trial index), so any
/// benchmark row can be reproduced as a single sort run with that seed.
inline std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t size,
                                       std::uint64_t trial) {
  return detail::mix64(detail::mix64(detail::mix64(master) ^ size) ^
                       (trial + 0x6a09e667f3bcc909ULL));
}

/// Which annealing schedule a run should use.
struct ScheduleChoice {
  enum class Kind { practical, theoretical, custom } kind = Kind::practical;
  AnnealingSchedule custom;  // consulted only when kind == custom
  std::string id = "preset:practical";

  static ScheduleChoice practical() { return {}; }
  static ScheduleChoice theoretical() {
    return {Kind::theoretical, {}, "preset:theoretical"};
  }
  static ScheduleChoice from(AnnealingSchedule schedule, std::string id) {
    return {Kind::custom, std::move(schedule), std::move(id)};
  }

  AnnealingSchedule make(std::size_t n) const {
    switch (kind) {
      case Kind::practical: return practical_schedule(n);
      case Kind::theoretical: return theoretical_schedule(n);
      case Kind::custom: return custom;
    }
    return custom;
  }
};

struct TrialConfig {
  Algo algo = Algo::spin;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  InputKind input_kind = InputKind::random;
  ScheduleChoice schedule;                 // anneal only
  std::optional<std::uint64_t> budget;   // spin: rounds; guess: comparisons
  Trace* recorder = nullptr;
};

inline std::vector<TaggedElement> make_input(InputKind kind, std::size_t n,
                                             RngStream& rng) {
  switch (kind) {
    case InputKind::random: return random_permutation(n, rng);
    case InputKind::adversarial: return adversarial_input(n);
    case InputKind::reverse: return reverse_input(n);
  }
  return {};
}

/// Runs the configured algorithm over `data`, drawing from `rng`, and
/// flattens the report. `rng` is the same stream that generated the input
/// when the input was generated, so a (seed, n) pair pins the whole run.
inline ExperimentRecord run_sort(const TrialConfig& cfg,
                                 std::span<TaggedElement> data,
                                 RngStream& rng) {
  ExperimentRecord rec;
  rec.algo = algo_name(cfg.algo);
  rec.n = data.size();
  rec.seed = cfg.seed;
  SortReport report;
  const auto start = std::chrono::steady_clock::now();
  switch (cfg.algo) {
    case Algo::spin: {
      const TerminationMode mode =
          cfg.budget ? TerminationMode::fixed_budget(*cfg.budget)
                     : TerminationMode::check_sorted();
      report = spin_the_bottle_sort(data, rng, mode, cfg.recorder);
      break;
    }
    case Algo::anneal: {
      const AnnealingSchedule schedule = cfg.schedule.make(data.size());
      rec.schedule_id = cfg.schedule.id;
      report = annealing_sort(data, schedule, rng, cfg.recorder);
      break;
    }
    case Algo::guess:
      report = guess_sort(data, rng,
                          cfg.budget.value_or(~std::uint64_t{0}));
      break;
    case Algo::bubble:
      report = bubble_sort(data);
      break;
  }
  const auto end = std::chrono::steady_clock::now();
  rec.comparisons = report.comparisons;
  rec.swaps = report.swaps;
  rec.rounds = report.rounds;
  rec.sorted = report.sorted;
  rec.wall_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(end - start)
          .count());
  return rec;
}

/// Generates the trial's input from its seed and runs one sort.
inline ExperimentRecord run_trial(const TrialConfig& cfg) {
  RngStream rng(cfg.seed);
  std::vector<TaggedElement> data = make_input(cfg.input_kind, cfg.n, rng);
  return run_sort(cfg, data, rng);
}

struct BenchConfig {
  Algo algo = Algo::spin;
  std::vector<std::size_t> sizes;
  std::uint64_t trials = 10;
  std::uint64_t seed = 0;
  InputKind input_kind = InputKind::random;
  bool fit = false;
  ScheduleChoice schedule;
  std::optional<std::uint64_t> budget;
};

struct BenchResult {
  std::vector<ExperimentRecord> records;
  std::optional<SlopeFit> fit;
};

inline std::string format_fit_line(const SlopeFit& fit) {
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "# fit slope=%.12g intercept=%.12g r_squared=%.12g", fit.slope,
                fit.intercept, fit.r_squared);
  return buf;
}

/// Runs trials in deterministic (size, trial) order, emitting one CSV row
/// per trial to `out` when given, plus a "# fit ..." summary line with
/// cfg.fit set. Records stay available for in-process callers.
inline BenchResult run_bench(const BenchConfig& cfg,
                             std::ostream* out = nullptr) {
  require(!cfg.sizes.empty(), "bench: need at least one size");
  require(cfg.trials >= 1, "bench: need at least one trial");
  if (cfg.fit) {
    std::vector<std::size_t> distinct = cfg.sizes;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    require(distinct.size() >= 3, "bench: --fit needs at least 3 distinct sizes");
  }
  BenchResult result;
  if (out) *out << kCsvHeader << '\n';
  for (const std::size_t n : cfg.sizes) {
    for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
      TrialConfig trial_cfg;
      trial_cfg.algo = cfg.algo;
      trial_cfg.n = n;
      trial_cfg.seed = derive_trial_seed(cfg.seed, n, trial);
      trial_cfg.input_kind = cfg.input_kind;
      trial_cfg.schedule = cfg.schedule;
      trial_cfg.budget = cfg.budget;
      ExperimentRecord rec = run_trial(trial_cfg);
      if (out) *out << csv_line(rec) << '\n';
      result.records.push_back(std::move(rec));
    }
  }
  if (cfg.fit) {
    std::vector<std::pair<double, double>> points;
    for (const std::size_t n : cfg.sizes) {
      double sum = 0.0;
      std::uint64_t count = 0;
      for (const ExperimentRecord& rec : result.records)
        if (rec.n == n) {
          sum += static_cast<double>(rec.comparisons);
          ++count;
        }
      points.emplace_back(static_cast<double>(n),
                          sum / static_cast<double>(count));
    }
    result.fit = loglog_slope(points);
    if (out) *out << format_fit_line(*result.fit) << '\n';
  }
  return result;
}

}  // namespace oblivisort
