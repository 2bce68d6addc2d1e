#pragma once

#include <cstdint>
#include <random>

namespace nrpunct {

/// Independent sub-streams derived from one root seed. Each purpose gets its
/// own stream so that, e.g., changing the scheduler never perturbs fading.
enum class StreamPurpose : std::uint64_t {
  placement = 1,
  fading = 2,
  traffic = 3,
  scheduler = 4,
  urllc_fading = 5,
};

/// SplitMix64 finaliser; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

/// Child seed for (parent, purpose, index). Deterministic and order-free.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag, std::uint64_t index = 0);
std::uint64_t derive_seed(std::uint64_t parent, StreamPurpose purpose, std::uint64_t index = 0);

/// Seeded 64-bit Mersenne Twister with the few draws the simulator needs.
/// Uniform and exponential draws use explicit bit manipulation so sequences do
/// not depend on the standard library's distribution implementations.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Exponential with the given mean (inverse CDF).
  double exponential(double mean);
  /// Poisson count with the given mean.
  std::int64_t poisson(double mean);
  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

}  // namespace nrpunct
