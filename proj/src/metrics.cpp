#include "nrpunct/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "nrpunct/errors.hpp"

namespace nrpunct {

double urllc_capacity_bits(const PunctureDecision& decision, const ChannelState& channel,
                           std::span<const int> urllc_users, double power_per_antenna_w,
                           const ResourceGrid& grid) {
  if (urllc_users.empty()) throw ContractViolation("at least one URLLC user is required");
  const double n = static_cast<double>(urllc_users.size());
  const double fb = grid.rb_bandwidth_khz();
  // kHz * ms = 1, so this is the bandwidth-time product in Hz*s.
  const double slot_ms = grid.numerology.slot_duration_ms;
  double bits = 0.0;
  for (int b = 0; b < decision.rb_count; ++b) {
    double gamma = 0.0;
    for (int k = 0; k < decision.users; ++k) gamma += decision.loss(k, b);
    if (gamma == 0.0) continue;
    for (int u : urllc_users) {
      double s = 0.0;
      for (double h : channel.gains(u, b)) s += power_per_antenna_w * h;
      const double se = std::log2(1.0 + s / channel.noise_power());
      bits += gamma / (fb * n) * se * fb * slot_ms;
    }
  }
  return bits;
}

bool urllc_error_event(const PunctureDecision& decision, const ChannelState& channel,
                       std::span<const int> urllc_users, double power_per_antenna_w,
                       int packet_size_bytes, int demand, const ResourceGrid& grid) {
  if (demand < 0) throw ContractViolation("negative URLLC demand");
  const double needed = 8.0 * packet_size_bytes * demand;
  return urllc_capacity_bits(decision, channel, urllc_users, power_per_antenna_w, grid) < needed;
}

double embb_reliability(std::span<const double> rates_bps, double r_min_bps) {
  if (rates_bps.empty()) throw ContractViolation("reliability of an empty sample");
  const auto ok = std::count_if(rates_bps.begin(), rates_bps.end(),
                                [&](double r) { return r >= r_min_bps; });
  return static_cast<double>(ok) / static_cast<double>(rates_bps.size());
}

double embb_reliability(const std::vector<SlotMetrics>& slots, double r_min_bps) {
  std::vector<double> all;
  for (const auto& s : slots) all.insert(all.end(), s.rate_bps.begin(), s.rate_bps.end());
  return embb_reliability(all, r_min_bps);
}

double objective_value(const std::vector<std::vector<double>>& rates_per_slot) {
  if (rates_per_slot.empty()) throw ContractViolation("objective needs at least one slot");
  double sum = 0.0;
  for (const auto& r : rates_per_slot) {
    if (r.empty()) throw ContractViolation("slot without eMBB users");
    sum += *std::min_element(r.begin(), r.end());
  }
  return sum / static_cast<double>(rates_per_slot.size());
}

double objective_value(const std::vector<SlotMetrics>& slots) {
  if (slots.empty()) throw ContractViolation("objective needs at least one slot");
  double sum = 0.0;
  for (const auto& s : slots) sum += s.min_rate_bps;
  return sum / static_cast<double>(slots.size());
}

TrialResult summarize_trial(const std::vector<SlotMetrics>& slots, double r_min_bps) {
  TrialResult t;
  t.slots = static_cast<int>(slots.size());
  t.mean_min_rate_bps = objective_value(slots);
  t.embb_reliability = embb_reliability(slots, r_min_bps);
  const auto errors =
      std::count_if(slots.begin(), slots.end(), [](const SlotMetrics& s) { return s.urllc_error; });
  t.urllc_outage = static_cast<double>(errors) / static_cast<double>(slots.size());
  return t;
}

}  // namespace nrpunct
