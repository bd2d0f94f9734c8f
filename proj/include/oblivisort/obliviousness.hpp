#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "oblivisort/algorithms.hpp"
#include "oblivisort/contract.hpp"
#include "oblivisort/schedule.hpp"
#include "oblivisort/trace.hpp"

namespace oblivisort {

/// Algorithm under an obliviousness check. Spin must run with a fixed round
/// budget; check_sorted termination is data-dependent by design and is
/// rejected.
struct SpinConfig {
  TerminationMode mode;
};
struct AnnealConfig {
  AnnealingSchedule schedule;
};
using ObliviousAlgo = std::variant<SpinConfig, AnnealConfig>;

struct ObliviousnessResult {
  bool identical = true;
  /// Index of the first input whose trace differs from input 0's.
  std::size_t divergent_input = 0;
};

/// Runs the configured algorithm once per input with an identical seed and
/// parameters, records each gate sequence, and reports whether all traces
/// match element for element.
inline ObliviousnessResult obliviousness_check(
    const ObliviousAlgo& algo, std::uint64_t seed,
    const std::vector<std::vector<TaggedElement>>& inputs) {
  require(!inputs.empty(), "obliviousness_check: need at least one input");
  for (const auto& input : inputs)
    require(input.size() == inputs.front().size(),
            "obliviousness_check: all inputs must share one length");
  if (const auto* spin = std::get_if<SpinConfig>(&algo))
    require(spin->mode.kind == TerminationMode::Kind::fixed_budget,
            "obliviousness_check: spin requires a fixed round budget");

  std::optional<Trace> reference;
  for (std::size_t idx = 0; idx < inputs.size(); ++idx) {
    std::vector<TaggedElement> work = inputs[idx];
    RngStream rng(seed);
    Trace trace;
    if (const auto* spin = std::get_if<SpinConfig>(&algo))
      spin_the_bottle_sort(work, rng, spin->mode, &trace);
    else
      annealing_sort(work, std::get<AnnealConfig>(algo).schedule, rng, &trace);
    if (!reference)
      reference = std::move(trace);
    else if (trace != *reference)
      return {false, idx};
  }
  return {};
}

}  // namespace oblivisort
