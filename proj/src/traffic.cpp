#include "nrpunct/traffic.hpp"

#include <algorithm>
#include <cstdint>

#include "nrpunct/errors.hpp"

namespace nrpunct {

UrllcArrivals sample_arrivals(RandomStream& stream, double lambda_per_slot, int minislots,
                              int rb_count, int packet_size_bytes) {
  if (!(lambda_per_slot >= 0.0)) throw ContractViolation("arrival rate must be non-negative");
  if (minislots < 1 || rb_count < 1) throw ContractViolation("empty grid");

  UrllcArrivals a;
  a.packet_size_bytes = packet_size_bytes;
  a.per_minislot.resize(static_cast<std::size_t>(minislots));
  const double mean = lambda_per_slot / minislots;
  const std::int64_t cap = static_cast<std::int64_t>(rb_count) * minislots;
  std::int64_t remaining = cap;
  for (int& dm : a.per_minislot) {
    // Draw every mini-slot even after the cap is hit so the stream position
    // does not depend on the load.
    const std::int64_t drawn = stream.poisson(mean);
    const std::int64_t kept = std::min(drawn, remaining);
    remaining -= kept;
    dm = static_cast<int>(kept);
    a.total += dm;
  }
  return a;
}

}  // namespace nrpunct
