#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oblivisort/compare_exchange.hpp"
#include "oblivisort/contract.hpp"
#include "oblivisort/element.hpp"

namespace oblivisort {

/// Ordered list of compare-exchange gates over `wires` lines, 1-based and
/// normalized so the smaller index receives the smaller element. The
/// recorded run of a data-oblivious sort doubles as a sorting network.
struct Trace {
  std::size_t wires = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ops;

  void record(std::size_t i, std::size_t j) {
    ops.emplace_back(static_cast<std::uint32_t>(std::min(i, j)),
                     static_cast<std::uint32_t>(std::max(i, j)));
  }

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Applies every gate in order to a copy of `input`.
inline std::vector<TaggedElement> replay(const Trace& t,
                                         std::span<const TaggedElement> input) {
  require(input.size() == t.wires, "replay: array length != trace wire count");
  std::vector<TaggedElement> a(input.begin(), input.end());
  for (const auto& [i, j] : t.ops) compare_exchange(a, i, j);
  return a;
}

struct ZeroOneResult {
  bool certified = false;
  /// Lexicographically first failing 0-1 input; absent when certified.
  std::optional<std::vector<int>> counterexample;
};

inline constexpr std::size_t kZeroOneExhaustionCap = 20;

/// Replays the trace on all 2^n zero-one inputs and certifies it iff every
/// output is nondecreasing. Inputs are enumerated lexicographically and the
/// first failure is returned. Runs 64 inputs at a time by packing one input
/// per bit lane: a compare-exchange on 0-1 values is (AND, OR) per lane.
inline ZeroOneResult verify_zero_one(const Trace& t,
                                     std::size_t cap = kZeroOneExhaustionCap) {
  require(t.wires <= cap,
          "verify_zero_one: wire count above the exhaustion cap");
  require(t.wires <= 62, "verify_zero_one: 2^n input space not enumerable");
  const std::size_t n = t.wires;
  if (n < 2) return {true, std::nullopt};
  // Instance v in [0, 2^n) assigns bit (n - w) of v to wire w, so instance
  // order is the lexicographic order of the input vectors.
  static constexpr std::uint64_t kLaneBit[6] = {
      0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
      0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL};
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::uint64_t> wire(n + 1);
  for (std::uint64_t base = 0; base < total; base += 64) {
    const std::uint64_t batch = std::min<std::uint64_t>(64, total - base);
    const std::uint64_t valid =
        batch == 64 ? ~0ULL : (std::uint64_t{1} << batch) - 1;
    for (std::size_t w = 1; w <= n; ++w) {
      const std::size_t shift = n - w;
      wire[w] = shift >= 6 ? (((base >> shift) & 1) ? ~0ULL : 0ULL)
                           : kLaneBit[shift];
    }
    for (const auto& [i, j] : t.ops) {
      const std::uint64_t lo = wire[i] & wire[j];
      const std::uint64_t hi = wire[i] | wire[j];
      wire[i] = lo;
      wire[j] = hi;
    }
    std::uint64_t bad = 0;
    for (std::size_t w = 1; w < n; ++w) bad |= wire[w] & ~wire[w + 1];
    bad &= valid;
    if (bad != 0) {
      const std::uint64_t v =
          base + static_cast<std::uint64_t>(std::countr_zero(bad));
      std::vector<int> vec(n);
      for (std::size_t w = 1; w <= n; ++w)
        vec[w - 1] = static_cast<int>((v >> (n - w)) & 1);
      return {false, std::move(vec)};
    }
  }
  return {true, std::nullopt};
}

struct NetworkStats {
  std::uint64_t size = 0;
  std::uint64_t depth = 0;
};

/// Greedy layering: each gate lands in the earliest layer after the last
/// layer touching either of its wires.
inline NetworkStats network_depth(const Trace& t) {
  std::vector<std::uint64_t> last(t.wires + 1, 0);
  std::uint64_t depth = 0;
  for (const auto& [i, j] : t.ops) {
    const std::uint64_t layer = std::max(last[i], last[j]) + 1;
    last[i] = last[j] = layer;
    depth = std::max(depth, layer);
  }
  return {t.ops.size(), depth};
}

/// Writes "wires N ops M" then one "i j" line per gate. LF newlines and
/// single spaces, so the format round-trips byte-exactly.
inline void write_trace(const Trace& t, std::ostream& out) {
  out << "wires " << t.wires << " ops " << t.ops.size() << '\n';
  for (const auto& [i, j] : t.ops) out << i << ' ' << j << '\n';
}

inline std::string trace_to_string(const Trace& t) {
  std::ostringstream out;
  write_trace(t, out);
  return out.str();
}

inline Trace read_trace(std::istream& in) {
  std::string wires_word, ops_word;
  std::size_t wires = 0, op_count = 0;
  if (!(in >> wires_word >> wires >> ops_word >> op_count) ||
      wires_word != "wires" || ops_word != "ops")
    throw std::runtime_error("trace file: malformed header");
  Trace t;
  t.wires = wires;
  t.ops.reserve(op_count);
  for (std::size_t k = 0; k < op_count; ++k) {
    std::size_t i = 0, j = 0;
    if (!(in >> i >> j))
      throw std::runtime_error("trace file: truncated op list");
    if (i < 1 || i > wires || j < 1 || j > wires || i == j)
      throw std::runtime_error("trace file: op indices out of range");
    t.record(i, j);
  }
  return t;
}

}  // namespace oblivisort
