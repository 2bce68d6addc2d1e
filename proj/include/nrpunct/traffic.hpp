#pragma once

#include <vector>

#include "nrpunct/random.hpp"

namespace nrpunct {

/// URLLC packets arriving during one slot, per mini-slot.
struct UrllcArrivals {
  std::vector<int> per_minislot;  // D_m, m = 0..M-1
  int total = 0;                  // D
  int packet_size_bytes = 50;     // eta
};

/// Draws D_m ~ Poisson(lambda / M) for each mini-slot and truncates the tail
/// mini-slots so that D never exceeds the B x M cell capacity.
UrllcArrivals sample_arrivals(RandomStream& stream, double lambda_per_slot, int minislots,
                              int rb_count, int packet_size_bytes = 50);

}  // namespace nrpunct
