#pragma once

#include <array>
#include <bit>
#include <cstdint>

#include "oblivisort/contract.hpp"

namespace oblivisort {

namespace detail {

/// splitmix64 finalizer: a bijective 64-bit mix.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// One splitmix64 step: advances the state by the golden-ratio increment
/// and returns the mixed value.
inline constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  return mix64(state += 0x9e3779b97f4a7c15ULL);
}

}  // namespace detail

/// Deterministic 64-bit random stream: xoshiro256++ with its state derived
/// from a (seed, stream_id) pair through splitmix64. Equal pairs replay the
/// exact same draw sequence on every platform and run; distinct stream ids
/// give draw sequences that never coincide in practice, so independent
/// trials can each own a stream without coordination. A stream is
/// single-owner: never draw from one stream concurrently.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    std::uint64_t init = seed ^ detail::mix64(stream_id + 0x9e3779b97f4a7c15ULL);
    for (auto& word : state_) word = detail::splitmix64(init);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  /// Next raw 64-bit draw.
  std::uint64_t next() {
    const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    ++position_;
    return result;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Number of raw draws consumed so far.
  std::uint64_t position() const { return position_; }

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t position_ = 0;
};

/// Unbiased integer in [lo, hi]: every value has probability exactly
/// 1/(hi-lo+1). Uses Lemire's debiased multiply, which rejects and redraws
/// the handful of raw values that would skew the distribution.
inline std::int64_t uniform_in_range(RngStream& rng, std::int64_t lo,
                                     std::int64_t hi) {
  require(lo <= hi, "uniform_in_range: empty range (lo > hi)");
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (span == 0)  // full 64-bit range
    return static_cast<std::int64_t>(rng.next());
  unsigned __int128 m = static_cast<unsigned __int128>(rng.next()) * span;
  auto low = static_cast<std::uint64_t>(m);
  if (low < span) {
    const std::uint64_t threshold = (0 - span) % span;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng.next()) * span;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) +
                                   static_cast<std::uint64_t>(m >> 64));
}

}  // namespace oblivisort
