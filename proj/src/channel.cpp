#include "nrpunct/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nrpunct/errors.hpp"

namespace nrpunct {

double PathLossModel::mean_gain(double distance_m) const {
  return std::pow(10.0, -reference_loss_db / 10.0) *
         std::pow(distance_m / reference_distance_m, -exponent);
}

std::vector<double> place_users(RandomStream& stream, int embb_users, int urllc_users,
                                double cell_radius_m, double min_distance_m) {
  if (!(cell_radius_m > 0.0)) throw ContractViolation("cell radius must be positive");
  const int total = embb_users + urllc_users;
  std::vector<double> d(static_cast<std::size_t>(std::max(total, 0)));
  for (double& x : d) {
    // Uniform over the disc: P(D <= r) = r^2 / R^2.
    x = std::max(cell_radius_m * std::sqrt(stream.uniform()), min_distance_m);
  }
  return d;
}

ChannelState::ChannelState(int users, int rb_count, int antennas, std::vector<double> distances,
                           double noise_power_w)
    : users_(users),
      rb_count_(rb_count),
      antennas_(antennas),
      distances_(std::move(distances)),
      noise_power_w_(noise_power_w),
      gains_(static_cast<std::size_t>(users) * static_cast<std::size_t>(rb_count) *
                 static_cast<std::size_t>(antennas),
             0.0) {}

double ChannelState::gain_sum(int user, int rb) const {
  const auto g = gains(user, rb);
  return std::accumulate(g.begin(), g.end(), 0.0);
}

ChannelState sample_channel(RandomStream& stream, const std::vector<double>& distances,
                            const ResourceGrid& grid, int antennas, const PathLossModel& pathloss,
                            double noise_power_w) {
  if (distances.empty()) throw ContractViolation("sample_channel needs at least one user");
  if (antennas < 1) throw ContractViolation("antenna count must be >= 1");
  const int users = static_cast<int>(distances.size());
  ChannelState ch(users, grid.rb_count, antennas, distances, noise_power_w);
  for (int k = 0; k < users; ++k) {
    const double mean = pathloss.mean_gain(distances[static_cast<std::size_t>(k)]);
    for (int b = 0; b < grid.rb_count; ++b) {
      for (int j = 0; j < antennas; ++j) ch.gain(k, b, j) = stream.exponential(mean);
    }
  }
  return ch;
}

PowerMap::PowerMap(AllocationMatrix alloc, int antennas, std::vector<double> power, double p_max)
    : alloc_(std::move(alloc)), antennas_(antennas), power_(std::move(power)), p_max_(p_max) {}

double PowerMap::power(int user, int rb, int antenna) const {
  if (!alloc_.allocated(user, rb)) return 0.0;
  return powers(rb)[static_cast<std::size_t>(antenna)];
}

double PowerMap::rb_power(int rb) const {
  const auto p = powers(rb);
  return std::accumulate(p.begin(), p.end(), 0.0);
}

double PowerMap::total() const { return std::accumulate(power_.begin(), power_.end(), 0.0); }

PowerMap allocate_power(const AllocationMatrix& alloc, int antennas, double p_max_w,
                        PowerPolicy policy) {
  if (antennas < 1) throw ContractViolation("antenna count must be >= 1");
  const int active = alloc.allocated_rb_count();
  if (active == 0) throw ContractViolation("cannot split power over an empty allocation");
  std::vector<double> power(static_cast<std::size_t>(alloc.rb_count()) *
                                static_cast<std::size_t>(antennas),
                            0.0);
  switch (policy) {
    case PowerPolicy::equal_split: {
      const double each = p_max_w / (static_cast<double>(active) * antennas);
      for (int b = 0; b < alloc.rb_count(); ++b) {
        if (alloc.owner(b) == kUnallocated) continue;
        for (int j = 0; j < antennas; ++j) {
          power[static_cast<std::size_t>(b) * static_cast<std::size_t>(antennas) +
                static_cast<std::size_t>(j)] = each;
        }
      }
      break;
    }
  }
  return PowerMap(alloc, antennas, std::move(power), p_max_w);
}

double snr(std::span<const double> powers, std::span<const double> gains, double noise_power_w) {
  if (powers.size() != gains.size()) throw ContractViolation("power/gain antenna count mismatch");
  if (!(noise_power_w > 0.0)) throw ContractViolation("noise power must be positive");
  double s = 0.0;
  for (std::size_t j = 0; j < powers.size(); ++j) s += powers[j] * gains[j];
  return s / noise_power_w;
}

}  // namespace nrpunct
