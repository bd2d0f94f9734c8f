// Command-line harness for the oblivisort library: single sorts with trace
// export, seeded benchmark sweeps with growth fits, zero-one certification
// and obliviousness checks, and inversion/region diagnostics.
//
// Exit codes: 0 success/certified, 1 verification or sort failure, 2
// usage/contract error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oblivisort/oblivisort.hpp"

namespace {

using nlohmann::ordered_json;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("OBLIVISORT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw oblivisort::contract_error(
          "OBLIVISORT_SEED must be an unsigned integer");
    }
  }
  std::random_device entropy;
  return (static_cast<std::uint64_t>(entropy()) << 32) ^ entropy();
}

std::vector<std::int64_t> read_keys(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::vector<std::int64_t> keys;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::int64_t key = 0;
    std::string extra;
    if (!(fields >> key) || (fields >> extra))
      throw std::runtime_error("input file: line " + std::to_string(line_no) +
                               ": expected one integer key");
    keys.push_back(key);
  }
  return keys;
}

oblivisort::ScheduleChoice resolve_schedule(const std::string& choice) {
  if (choice == "preset:practical") return oblivisort::ScheduleChoice::practical();
  if (choice == "preset:theoretical")
    return oblivisort::ScheduleChoice::theoretical();
  if (choice.rfind("preset:", 0) == 0)
    throw oblivisort::contract_error("unknown schedule preset: " + choice);
  std::ifstream in(choice);
  if (!in) throw std::runtime_error("cannot open schedule file: " + choice);
  return oblivisort::ScheduleChoice::from(oblivisort::read_schedule(in), choice);
}

ordered_json record_json(const oblivisort::ExperimentRecord& r) {
  return ordered_json{{"algo", r.algo},
                      {"n", r.n},
                      {"seed", r.seed},
                      {"schedule_id", r.schedule_id},
                      {"comparisons", r.comparisons},
                      {"swaps", r.swaps},
                      {"rounds", r.rounds},
                      {"sorted", r.sorted},
                      {"wall_ns", r.wall_ns}};
}

struct SortOpts {
  std::string algo;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  std::string input;
  std::string schedule = "preset:practical";
  std::optional<std::uint64_t> budget;
  std::string trace_out;
  bool json = false;
};

int cmd_sort(const SortOpts& opts) {
  oblivisort::TrialConfig cfg;
  cfg.algo = oblivisort::parse_algo(opts.algo);
  cfg.seed = resolve_seed(opts.seed);
  cfg.budget = opts.budget;
  if (cfg.algo == oblivisort::Algo::anneal)
    cfg.schedule = resolve_schedule(opts.schedule);

  oblivisort::Trace trace;
  if (!opts.trace_out.empty()) {
    oblivisort::require(cfg.algo == oblivisort::Algo::spin ||
                            cfg.algo == oblivisort::Algo::anneal,
                        "--trace requires --algo spin or anneal");
    cfg.recorder = &trace;
  }

  oblivisort::ExperimentRecord rec;
  oblivisort::RngStream rng(cfg.seed);
  if (!opts.input.empty()) {
    const auto keys = read_keys(opts.input);
    oblivisort::require(!opts.n || *opts.n == keys.size(),
                        "--n disagrees with the input file length");
    oblivisort::require(!keys.empty(), "input file holds no keys (n < 1)");
    auto data = oblivisort::tag_keys(keys);
    cfg.n = data.size();
    rec = oblivisort::run_sort(cfg, data, rng);
  } else {
    oblivisort::require(opts.n.has_value(), "need --n or --input");
    oblivisort::require(*opts.n >= 1, "need n >= 1");
    cfg.n = *opts.n;
    auto data = oblivisort::random_permutation(cfg.n, rng);
    rec = oblivisort::run_sort(cfg, data, rng);
  }

  if (!opts.trace_out.empty()) {
    std::ofstream out(opts.trace_out);
    if (!out)
      throw std::runtime_error("cannot open trace output: " + opts.trace_out);
    oblivisort::write_trace(trace, out);
  }

  if (opts.json)
    std::cout << record_json(rec).dump() << '\n';
  else
    std::cout << oblivisort::kCsvHeader << '\n'
              << oblivisort::csv_line(rec) << '\n';
  return rec.sorted ? 0 : 1;
}

struct BenchOpts {
  std::string algo;
  std::string sizes;
  std::uint64_t trials = 10;
  std::optional<std::uint64_t> seed;
  std::string input_kind = "random";
  bool fit = false;
  std::string schedule = "preset:practical";
  std::optional<std::uint64_t> budget;
  bool json = false;
};

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::istringstream fields(text);
  std::string token;
  while (std::getline(fields, token, ',')) {
    try {
      const auto value = std::stoull(token);
      oblivisort::require(value >= 1, "sizes must be >= 1");
      sizes.push_back(static_cast<std::size_t>(value));
    } catch (const oblivisort::contract_error&) {
      throw;
    } catch (const std::exception&) {
      throw oblivisort::contract_error("bad size token: " + token);
    }
  }
  oblivisort::require(!sizes.empty(), "--sizes is empty");
  return sizes;
}

int cmd_bench(const BenchOpts& opts) {
  oblivisort::BenchConfig cfg;
  cfg.algo = oblivisort::parse_algo(opts.algo);
  cfg.sizes = parse_sizes(opts.sizes);
  cfg.trials = opts.trials;
  cfg.seed = resolve_seed(opts.seed);
  cfg.input_kind = oblivisort::parse_input_kind(opts.input_kind);
  cfg.fit = opts.fit;
  cfg.budget = opts.budget;
  if (cfg.algo == oblivisort::Algo::anneal)
    cfg.schedule = resolve_schedule(opts.schedule);

  if (!opts.json) {
    oblivisort::run_bench(cfg, &std::cout);
    return 0;
  }
  const auto result = oblivisort::run_bench(cfg);
  for (const auto& rec : result.records)
    std::cout << record_json(rec).dump() << '\n';
  if (result.fit)
    std::cout << ordered_json{{"fit",
                               {{"slope", result.fit->slope},
                                {"intercept", result.fit->intercept},
                                {"r_squared", result.fit->r_squared}}}}
                     .dump()
              << '\n';
  return 0;
}

struct VerifyOpts {
  std::string trace;
  std::size_t cap = oblivisort::kZeroOneExhaustionCap;
  std::string algo;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  std::size_t inputs = 10;
  std::string schedule = "preset:practical";
  std::optional<std::uint64_t> budget;
};

int cmd_verify(const VerifyOpts& opts) {
  if (!opts.trace.empty()) {
    std::ifstream in(opts.trace);
    if (!in)
      throw std::runtime_error("cannot open trace file: " + opts.trace);
    const auto trace = oblivisort::read_trace(in);
    const auto result = oblivisort::verify_zero_one(trace, opts.cap);
    if (result.certified) {
      std::cout << "certified wires=" << trace.wires
                << " ops=" << trace.ops.size() << '\n';
      return 0;
    }
    std::cout << "counterexample:";
    for (const int bit : *result.counterexample) std::cout << ' ' << bit;
    std::cout << '\n';
    return 1;
  }

  oblivisort::require(!opts.algo.empty() && opts.n.has_value(),
                      "verify needs --trace, or --algo with --n");
  oblivisort::require(opts.inputs >= 1, "need --inputs >= 1");
  const std::size_t n = *opts.n;
  oblivisort::require(n >= 1, "need n >= 1");
  const std::uint64_t seed = resolve_seed(opts.seed);

  oblivisort::ObliviousAlgo algo;
  const auto kind = oblivisort::parse_algo(opts.algo);
  if (kind == oblivisort::Algo::spin) {
    algo = oblivisort::SpinConfig{oblivisort::TerminationMode::fixed_budget(
        opts.budget.value_or(oblivisort::default_spin_budget(n)))};
  } else if (kind == oblivisort::Algo::anneal) {
    algo = oblivisort::AnnealConfig{resolve_schedule(opts.schedule).make(n)};
  } else {
    throw oblivisort::contract_error(
        "obliviousness check supports --algo spin or anneal");
  }

  std::vector<std::vector<oblivisort::TaggedElement>> inputs;
  inputs.reserve(opts.inputs);
  for (std::size_t k = 1; k <= opts.inputs; ++k) {
    oblivisort::RngStream input_rng(seed, k);
    inputs.push_back(oblivisort::random_permutation(n, input_rng));
  }
  const auto result = oblivisort::obliviousness_check(algo, seed, inputs);
  if (result.identical) {
    std::cout << "identical traces=" << opts.inputs << " n=" << n << '\n';
    return 0;
  }
  std::cout << "trace divergence at input " << result.divergent_input << '\n';
  return 1;
}

struct RegionsOpts {
  std::optional<std::size_t> n;
  std::size_t k = 0;
  std::size_t depth = 0;
  std::optional<std::uint64_t> seed;
  std::string input;
  std::int64_t threshold = 1;
};

const char* class_name(oblivisort::RegionClass cls) {
  switch (cls) {
    case oblivisort::RegionClass::low: return "low";
    case oblivisort::RegionClass::high: return "high";
    case oblivisort::RegionClass::mixed: return "mixed";
  }
  return "?";
}

int cmd_regions(const RegionsOpts& opts) {
  std::vector<oblivisort::TaggedElement> data;
  if (!opts.input.empty()) {
    // General keys are mapped to 0-1 by the threshold: key >= threshold -> 1.
    const auto keys = read_keys(opts.input);
    std::vector<std::int64_t> bits(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
      bits[i] = keys[i] >= opts.threshold ? 1 : 0;
    data = oblivisort::tag_keys(bits);
  } else {
    oblivisort::require(opts.n.has_value(), "regions needs --n or --input");
    if (opts.seed) {
      oblivisort::RngStream rng(*opts.seed);
      data = oblivisort::zero_one_random(*opts.n, opts.k, rng);
    } else {
      data = oblivisort::zero_one_pattern(*opts.n, opts.k);
    }
  }
  const auto report = oblivisort::region_report(data, opts.depth);
  std::cout << "region,first,last,class,dirtiness,desired_bound,distance\n";
  for (std::size_t r = 0; r < report.regions.size(); ++r) {
    const auto& region = report.regions[r];
    std::cout << r + 1 << ',' << region.first << ',' << region.last << ','
              << class_name(region.cls) << ',' << region.dirtiness << ','
              << region.desired_bound << ',' << region.distance << '\n';
  }
  return 0;
}

struct ScheduleOpts {
  std::size_t n = 0;
  std::string choice = "preset:practical";
  std::string out;
};

int cmd_schedule(const ScheduleOpts& opts) {
  const auto schedule = resolve_schedule(opts.choice).make(opts.n);
  if (auto violation = oblivisort::validate(schedule))
    throw oblivisort::contract_error("invalid schedule: " + *violation);
  if (opts.out.empty()) {
    oblivisort::write_schedule(schedule, std::cout);
  } else {
    std::ofstream out(opts.out);
    if (!out)
      throw std::runtime_error("cannot open schedule output: " + opts.out);
    oblivisort::write_schedule(schedule, out);
  }
  return 0;
}

struct InversionsOpts {
  std::string input;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
};

int cmd_inversions(const InversionsOpts& opts) {
  std::vector<oblivisort::TaggedElement> data;
  if (!opts.input.empty()) {
    data = oblivisort::tag_keys(read_keys(opts.input));
  } else {
    oblivisort::require(opts.n.has_value(), "inversions needs --n or --input");
    oblivisort::RngStream rng(resolve_seed(opts.seed));
    data = oblivisort::random_permutation(*opts.n, rng);
  }
  const auto profile = oblivisort::inversion_count(data);
  ordered_json out{{"n", data.size()}, {"total", profile.total}};
  if (profile.per_index)
    out["per_index"] = *profile.per_index;
  else
    out["per_index"] = nullptr;
  std::cout << out.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "oblivisort: randomized data-oblivious sorting, trace verification, "
      "and growth benchmarks"};
  app.require_subcommand(1);

  SortOpts sort_opts;
  auto* sort = app.add_subcommand("sort", "run one sort and print its record");
  sort->add_option("--algo", sort_opts.algo, "spin|anneal|guess|bubble")
      ->required();
  sort->add_option("--n", sort_opts.n, "array length (random permutation input)");
  sort->add_option("--seed", sort_opts.seed,
                   "master seed (else OBLIVISORT_SEED, else OS entropy)");
  sort->add_option("--input", sort_opts.input, "file with one integer key per line");
  sort->add_option("--schedule", sort_opts.schedule,
                   "preset:practical|preset:theoretical|FILE (anneal)");
  sort->add_option("--budget", sort_opts.budget,
                   "spin: fixed round budget (data-oblivious); guess: max comparisons");
  sort->add_option("--trace", sort_opts.trace_out, "write the gate trace to FILE");
  sort->add_flag("--json", sort_opts.json, "emit a JSON line instead of CSV");

  BenchOpts bench_opts;
  auto* bench = app.add_subcommand("bench", "seeded trials over a size sweep, CSV out");
  bench->add_option("--algo", bench_opts.algo, "spin|anneal|guess|bubble")
      ->required();
  bench->add_option("--sizes", bench_opts.sizes, "comma-separated sizes")
      ->required();
  bench->add_option("--trials", bench_opts.trials, "trials per size");
  bench->add_option("--seed", bench_opts.seed, "master seed");
  bench->add_option("--input-kind", bench_opts.input_kind,
                    "random|adversarial|reverse");
  bench->add_flag("--fit", bench_opts.fit,
                  "append a log-log slope fit over per-size mean comparisons");
  bench->add_option("--schedule", bench_opts.schedule, "schedule choice (anneal)");
  bench->add_option("--budget", bench_opts.budget, "spin rounds / guess comparisons");
  bench->add_flag("--json", bench_opts.json, "emit JSON lines instead of CSV");

  VerifyOpts verify_opts;
  auto* verify = app.add_subcommand(
      "verify", "zero-one certify a trace, or check obliviousness of a config");
  verify->add_option("--trace", verify_opts.trace, "trace file to certify");
  verify->add_option("--cap", verify_opts.cap,
                     "max wires for exhaustive certification");
  verify->add_option("--algo", verify_opts.algo,
                     "spin|anneal (obliviousness check)");
  verify->add_option("--n", verify_opts.n, "array length");
  verify->add_option("--seed", verify_opts.seed, "seed shared by all runs");
  verify->add_option("--inputs", verify_opts.inputs, "number of random inputs");
  verify->add_option("--schedule", verify_opts.schedule, "schedule choice (anneal)");
  verify->add_option("--budget", verify_opts.budget, "spin round budget");

  RegionsOpts regions_opts;
  auto* regions = app.add_subcommand(
      "regions", "region/dirtiness snapshot of a 0-1 array, CSV out");
  regions->add_option("--n", regions_opts.n, "array length");
  regions->add_option("--k", regions_opts.k, "number of ones");
  regions->add_option("--depth", regions_opts.depth, "partition depth d (2^d regions)");
  regions->add_option("--seed", regions_opts.seed,
                      "random one-placement (default: leading ones)");
  regions->add_option("--input", regions_opts.input, "key file, thresholded to 0-1");
  regions->add_option("--threshold", regions_opts.threshold,
                      "keys >= threshold map to 1 (with --input)");

  ScheduleOpts schedule_opts;
  auto* schedule = app.add_subcommand(
      "schedule", "emit an annealing schedule in the \"T r\" file format");
  schedule->add_option("--n", schedule_opts.n, "array length the schedule targets")
      ->required();
  schedule->add_option("--schedule", schedule_opts.choice,
                       "preset:practical|preset:theoretical|FILE");
  schedule->add_option("--out", schedule_opts.out, "write to FILE instead of stdout");

  InversionsOpts inversions_opts;
  auto* inversions = app.add_subcommand(
      "inversions", "inversion profile of an input, JSON out");
  inversions->add_option("--input", inversions_opts.input, "key file");
  inversions->add_option("--n", inversions_opts.n, "random permutation length");
  inversions->add_option("--seed", inversions_opts.seed, "seed for --n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sort) return cmd_sort(sort_opts);
    if (*bench) return cmd_bench(bench_opts);
    if (*verify) return cmd_verify(verify_opts);
    if (*schedule) return cmd_schedule(schedule_opts);
    if (*regions) return cmd_regions(regions_opts);
    if (*inversions) return cmd_inversions(inversions_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
