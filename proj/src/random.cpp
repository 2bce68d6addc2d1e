#include "nrpunct/random.hpp"

#include <cmath>

#include "nrpunct/errors.hpp"

namespace nrpunct {

namespace {
// Below this mean the inverse-CDF walk is exact and fast, and it couples
// draws monotonically in the mean for a shared uniform.
constexpr double kPoissonInversionLimit = 64.0;
}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag, std::uint64_t index) {
  return mix64(mix64(parent ^ mix64(tag)) + mix64(index ^ 0x5851f42d4c957f2dULL));
}

std::uint64_t derive_seed(std::uint64_t parent, StreamPurpose purpose, std::uint64_t index) {
  return derive_seed(parent, static_cast<std::uint64_t>(purpose), index);
}

double RandomStream::exponential(double mean) {
  // 1 - u is in (0, 1], so the log is finite.
  return -mean * std::log1p(-uniform());
}

std::int64_t RandomStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw ContractViolation("poisson mean must be non-negative");
  if (mean == 0.0) return 0;
  if (mean < kPoissonInversionLimit) {
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::int64_t k = 0;
    while (u >= cdf) {
      ++k;
      p *= mean / static_cast<double>(k);
      const double next = cdf + p;
      if (next == cdf) break;  // tail exhausted in double precision
      cdf = next;
    }
    return k;
  }
  std::poisson_distribution<std::int64_t> dist(mean);
  return dist(engine_);
}

std::uint64_t RandomStream::below(std::uint64_t n) {
  if (n == 0) throw ContractViolation("below(0)");
  // Rejection sampling on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

}  // namespace nrpunct
