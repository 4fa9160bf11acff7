#pragma once
// Counter-based randomness: sample i of a run draws from a stream that depends
// only on (seed, i), so work can be split across threads in any order.

#include <cstdint>
#include <random>

namespace randsurf {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// mt19937_64 output is fixed by the standard, so streams are portable.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(stream_key(seed, index));
}

/// Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
/// std::uniform_int_distribution is avoided: its algorithm is implementation-defined.
template <class Engine>
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  std::uint64_t x = engine();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = engine();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace randsurf
