#include "nrpunct/grid.hpp"

#include <cmath>
#include <string>

#include "nrpunct/errors.hpp"

namespace nrpunct {

Numerology numerology_for(int index) {
  if (index != 0) {
    throw ConfigError("unsupported numerology index " + std::to_string(index) +
                      " (only mu = 0 is available)");
  }
  Numerology n;
  n.index = 0;
  n.subcarrier_spacing_khz = 15.0;
  n.rb_bandwidth_khz = Numerology::kSubcarriersPerRb * n.subcarrier_spacing_khz;
  n.slot_duration_ms = 1.0;
  n.symbols_per_minislot = 2;
  n.minislots_per_slot = Numerology::kSymbolsPerSlot / n.symbols_per_minislot;
  return n;
}

ResourceGrid build_grid(int numerology_index, double total_bandwidth_khz, double guard_band_khz,
                        int frame_slots) {
  ResourceGrid grid;
  grid.numerology = numerology_for(numerology_index);
  if (!(guard_band_khz >= 0.0)) {
    throw ConfigError("guard band must be non-negative");
  }
  if (frame_slots < 1) {
    throw ConfigError("frame must contain at least one slot");
  }
  const double usable = total_bandwidth_khz - 2.0 * guard_band_khz;
  const double fb = grid.numerology.rb_bandwidth_khz;
  // Accept an exact fit of one RB; the floor below handles the rest.
  if (!(usable >= fb)) {
    throw ConfigError("bandwidth " + std::to_string(total_bandwidth_khz) +
                      " kHz leaves no room for one RB after guard bands");
  }
  grid.total_bandwidth_khz = total_bandwidth_khz;
  grid.guard_band_khz = guard_band_khz;
  grid.rb_count = static_cast<int>(std::floor(usable / fb + 1e-9));
  grid.frame_slots = frame_slots;
  return grid;
}

AllocationMatrix::AllocationMatrix(int users, std::vector<int> owner)
    : users_(users), owner_(std::move(owner)) {
  for (int o : owner_) {
    if (o != kUnallocated && (o < 0 || o >= users_)) {
      throw ContractViolation("allocation owner out of range");
    }
  }
}

int AllocationMatrix::rb_count_of(int user) const {
  int n = 0;
  for (int o : owner_) n += (o == user);
  return n;
}

int AllocationMatrix::allocated_rb_count() const {
  int n = 0;
  for (int o : owner_) n += (o != kUnallocated);
  return n;
}

std::vector<int> AllocationMatrix::rbs_of(int user) const {
  std::vector<int> rbs;
  for (int b = 0; b < rb_count(); ++b) {
    if (owner(b) == user) rbs.push_back(b);
  }
  return rbs;
}

AllocationMatrix initial_allocation(const ResourceGrid& grid, int users, AllocationPolicy policy) {
  if (users < 1) {
    throw ConfigError("at least one eMBB user is required");
  }
  if (users > grid.rb_count) {
    throw ConfigError("K <= B violated: " + std::to_string(users) + " eMBB users for " +
                      std::to_string(grid.rb_count) + " resource blocks");
  }
  std::vector<int> owner(static_cast<std::size_t>(grid.rb_count));
  switch (policy) {
    case AllocationPolicy::round_robin:
      for (int b = 0; b < grid.rb_count; ++b) owner[static_cast<std::size_t>(b)] = b % users;
      break;
  }
  return AllocationMatrix(users, std::move(owner));
}

}  // namespace nrpunct
