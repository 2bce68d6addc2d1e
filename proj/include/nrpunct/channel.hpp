#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nrpunct/grid.hpp"
#include "nrpunct/random.hpp"

namespace nrpunct {

/// Log-distance mean path gain: g(d) = 10^(-L0/10) * (d / d0)^(-alpha).
struct PathLossModel {
  double exponent = 3.5;
  double reference_loss_db = 45.0;
  double reference_distance_m = 1.0;

  double mean_gain(double distance_m) const;
};

/// Distances of the K eMBB users followed by the N URLLC users.
std::vector<double> place_users(RandomStream& stream, int embb_users, int urllc_users,
                                double cell_radius_m, double min_distance_m = 10.0);

/// Block-fading power gains for every user, RB and gNB antenna of one slot.
/// Users 0..K-1 are eMBB, K..K+N-1 are URLLC.
class ChannelState {
public:
  ChannelState(int users, int rb_count, int antennas, std::vector<double> distances,
               double noise_power_w);

  int users() const { return users_; }
  int rb_count() const { return rb_count_; }
  int antennas() const { return antennas_; }
  double noise_power() const { return noise_power_w_; }
  const std::vector<double>& distances() const { return distances_; }

  double gain(int user, int rb, int antenna) const { return gains_[index(user, rb, antenna)]; }
  double& gain(int user, int rb, int antenna) { return gains_[index(user, rb, antenna)]; }
  /// Gains of all antennas for (user, rb).
  std::span<const double> gains(int user, int rb) const {
    return {gains_.data() + index(user, rb, 0), static_cast<std::size_t>(antennas_)};
  }
  /// Antenna-summed gain, used when comparing channel quality between RBs.
  double gain_sum(int user, int rb) const;
  const std::vector<double>& raw() const { return gains_; }

private:
  std::size_t index(int user, int rb, int antenna) const {
    return (static_cast<std::size_t>(user) * static_cast<std::size_t>(rb_count_) +
            static_cast<std::size_t>(rb)) *
               static_cast<std::size_t>(antennas_) +
           static_cast<std::size_t>(antenna);
  }

  int users_;
  int rb_count_;
  int antennas_;
  std::vector<double> distances_;
  double noise_power_w_;
  std::vector<double> gains_;
};

/// i.i.d. Rayleigh (exponential power) gains with per-user mean from `pathloss`.
ChannelState sample_channel(RandomStream& stream, const std::vector<double>& distances,
                            const ResourceGrid& grid, int antennas, const PathLossModel& pathloss,
                            double noise_power_w);

enum class PowerPolicy { equal_split };

/// Per-(RB, antenna) transmit power toward the RB's owner. Entries for RBs
/// without an owner are zero, which realises p[k][b][j] = 0 where x[k][b] = 0.
class PowerMap {
public:
  PowerMap(AllocationMatrix alloc, int antennas, std::vector<double> power, double p_max);

  int antennas() const { return antennas_; }
  double p_max() const { return p_max_; }
  /// p[k][b][j]; zero unless k owns b.
  double power(int user, int rb, int antenna) const;
  /// Power of each antenna on `rb` toward its owner.
  std::span<const double> powers(int rb) const {
    return {power_.data() + static_cast<std::size_t>(rb) * static_cast<std::size_t>(antennas_),
            static_cast<std::size_t>(antennas_)};
  }
  /// Sum over antennas on `rb`.
  double rb_power(int rb) const;
  double total() const;
  const AllocationMatrix& allocation() const { return alloc_; }

private:
  AllocationMatrix alloc_;
  int antennas_;
  std::vector<double> power_;  // [rb][antenna]
  double p_max_;
};

PowerMap allocate_power(const AllocationMatrix& alloc, int antennas, double p_max_w,
                        PowerPolicy policy = PowerPolicy::equal_split);

/// Sum_j p_j h_j / sigma^2.
double snr(std::span<const double> powers, std::span<const double> gains, double noise_power_w);
inline double snr(double power, double gain, double noise_power_w) {
  return snr(std::span<const double>(&power, 1), std::span<const double>(&gain, 1), noise_power_w);
}

}  // namespace nrpunct
