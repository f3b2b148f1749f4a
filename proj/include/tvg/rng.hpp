#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string_view>

namespace tvg {

/// Deterministic 64-bit generator (splitmix64 core). Every random quantity in
/// the repo flows from one user seed through named substreams, so repeated
/// runs with the same seed reproduce the same experiments bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi], inclusive. Rejection sampling, no modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x = u64();
    while (x >= limit) x = u64();
    return lo + static_cast<std::int64_t>(x % span);
  }

  /// Standard normal via Box-Muller. The spare value is discarded so the
  /// generator carries no hidden state between calls.
  double gaussian() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

namespace detail {
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}
}  // namespace detail

/// Derives the seed of an independent named substream ("trial" #i, "pool",
/// ...) from a base seed. Streams with different names or indices are
/// decorrelated by splitmix mixing.
inline std::uint64_t stream_seed(std::uint64_t base_seed, std::string_view name,
                                 std::uint64_t index = 0) {
  Rng mixer(base_seed ^ detail::fnv1a64(name));
  std::uint64_t s = mixer.u64();
  Rng indexed(s + 0x9e3779b97f4a7c15ull * (index + 1));
  return indexed.u64();
}

/// Substream generator: Rng(stream_seed(...)).
inline Rng stream_rng(std::uint64_t base_seed, std::string_view name,
                      std::uint64_t index = 0) {
  return Rng(stream_seed(base_seed, name, index));
}

}  // namespace tvg
