#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace changeset {

/// Counter-based random number generation. Every draw is a pure function of
/// (seed, counter coordinates), so generation is reproducible across runs
/// and independent of evaluation order or thread schedule.
namespace rng {

/// splitmix64 finalizer; a 64-bit mixing permutation.
inline std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t key3(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) noexcept {
  std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ULL * a);
  h = mix64(h + 0x9E3779B97F4A7C15ULL * b);
  return mix64(h + 0x9E3779B97F4A7C15ULL * c);
}

/// Uniform in [0,1) from the top 53 bits.
inline double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Uniform in (0,1]; safe as a log argument.
inline double to_positive_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

/// Standard normal draw keyed by (seed, a, b, c) via Box-Muller.
inline double normal(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                     std::uint64_t c) noexcept {
  const std::uint64_t k = key3(seed, a, b, c);
  const double u1 = to_positive_unit(k);
  const double u2 = to_unit(mix64(k));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Per-trial seeds for Monte-Carlo repetitions: mixed, never sequential, so
/// trials can run in any order or in parallel with identical streams.
inline std::uint64_t derive_trial_seed(std::uint64_t base_seed, int trial) noexcept {
  return mix64(base_seed ^ mix64(static_cast<std::uint64_t>(trial) + 1));
}

}  // namespace rng
}  // namespace changeset
