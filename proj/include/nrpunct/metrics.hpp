#pragma once

#include <span>
#include <vector>

#include "nrpunct/channel.hpp"
#include "nrpunct/grid.hpp"
#include "nrpunct/rate.hpp"

namespace nrpunct {

struct SlotMetrics {
  std::vector<double> rate_bps;  // r_k(t)
  double min_rate_bps = 0.0;
  bool urllc_error = false;
  int demand = 0;        // D(t)
  int served_units = 0;  // cells actually punctured
};

struct TrialResult {
  double mean_min_rate_bps = 0.0;
  double embb_reliability = 0.0;
  double urllc_outage = 0.0;
  int slots = 0;
};

/// URLLC capacity delivered in the punctured cells, in bits:
///   C = sum_n sum_b gamma_b / (f_b N) * log2(1 + SNR_nb) * f_b * T_slot
/// where gamma_b is the loss on RB b (so sum_b gamma_b = sum_k gamma_k) and
/// SNR_nb uses `power_per_antenna_w` on every antenna toward URLLC user n.
double urllc_capacity_bits(const PunctureDecision& decision, const ChannelState& channel,
                           std::span<const int> urllc_users, double power_per_antenna_w,
                           const ResourceGrid& grid);

/// True when the delivered capacity falls strictly short of 8 * eta * D bits.
bool urllc_error_event(const PunctureDecision& decision, const ChannelState& channel,
                       std::span<const int> urllc_users, double power_per_antenna_w,
                       int packet_size_bytes, int demand, const ResourceGrid& grid);

/// Fraction of (slot, user) rate samples at or above r_min.
double embb_reliability(std::span<const double> rates_bps, double r_min_bps);
double embb_reliability(const std::vector<SlotMetrics>& slots, double r_min_bps);

/// Time average of the per-slot minimum rate.
double objective_value(const std::vector<std::vector<double>>& rates_per_slot);
double objective_value(const std::vector<SlotMetrics>& slots);

TrialResult summarize_trial(const std::vector<SlotMetrics>& slots, double r_min_bps);

}  // namespace nrpunct
