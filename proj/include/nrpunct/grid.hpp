#pragma once

#include <cstddef>
#include <vector>

namespace nrpunct {

/// 5G-NR numerology parameters. Only mu = 0 is tabulated for now.
struct Numerology {
  int index = 0;
  double subcarrier_spacing_khz = 15.0;
  double rb_bandwidth_khz = 180.0;  // 12 subcarriers
  double slot_duration_ms = 1.0;
  int minislots_per_slot = 7;
  int symbols_per_minislot = 2;

  static constexpr int kSubcarriersPerRb = 12;
  static constexpr int kSymbolsPerSlot = 14;

  double minislot_duration_ms() const { return slot_duration_ms / minislots_per_slot; }
};

/// Throws ConfigError for indices without a table entry.
Numerology numerology_for(int index);

struct ResourceGrid {
  Numerology numerology;
  double total_bandwidth_khz = 0.0;
  double guard_band_khz = 0.0;  // applied at each band edge
  int rb_count = 0;             // B
  int frame_slots = 0;          // T

  int minislots() const { return numerology.minislots_per_slot; }
  double rb_bandwidth_khz() const { return numerology.rb_bandwidth_khz; }
  /// B x M frequency-time cells per slot.
  int capacity_units() const { return rb_count * numerology.minislots_per_slot; }
};

ResourceGrid build_grid(int numerology_index, double total_bandwidth_khz, double guard_band_khz,
                        int frame_slots);

inline constexpr int kUnallocated = -1;

/// K x B binary allocation, stored column-wise as the owning user of each RB.
/// Column exclusivity holds by construction.
class AllocationMatrix {
public:
  AllocationMatrix(int users, std::vector<int> owner);

  int users() const { return users_; }
  int rb_count() const { return static_cast<int>(owner_.size()); }
  int owner(int rb) const { return owner_[static_cast<std::size_t>(rb)]; }
  bool allocated(int user, int rb) const { return owner(rb) == user; }
  /// x[k][b] as 0/1.
  int x(int user, int rb) const { return allocated(user, rb) ? 1 : 0; }

  int rb_count_of(int user) const;
  int allocated_rb_count() const;
  /// RBs owned by `user`, ascending.
  std::vector<int> rbs_of(int user) const;
  const std::vector<int>& owners() const { return owner_; }

private:
  int users_;
  std::vector<int> owner_;
};

enum class AllocationPolicy { round_robin };

AllocationMatrix initial_allocation(const ResourceGrid& grid, int users,
                                    AllocationPolicy policy = AllocationPolicy::round_robin);

}  // namespace nrpunct
