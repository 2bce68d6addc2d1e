#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nrpunct/channel.hpp"
#include "nrpunct/grid.hpp"

namespace nrpunct {

enum class LossShape { linear, convex_quadratic };

std::string_view to_string(LossShape shape);
LossShape loss_shape_from_string(std::string_view name);

struct LossSpec {
  LossShape shape = LossShape::linear;
  double offset_khz = 180.0;  // threshold offset, one RB by default
};

/// Bandwidth lost on one RB when the fraction `punctured` of its
/// frequency-time cells carries URLLC data.
///   linear: f_b * q      convex quadratic: f_b * q^2
double rb_loss_khz(double rb_bandwidth_khz, double punctured, LossShape shape);

/// Per-slot puncturing outcome.
///
/// Weights follow the loss formula gamma_kb = x_kb f_b rho_kb u with the
/// system load u = D / (B M). The product rho_kb * u is the fraction of RB b's
/// cells that are punctured, so rho = 1 on every RB is the uniform spread and
/// rho may exceed 1 on RBs that carry more than their uniform share (the
/// punctured fraction rho * u never exceeds 1).
struct PunctureDecision {
  int users = 0;
  int rb_count = 0;
  int minislots = 0;
  LossShape shape = LossShape::linear;
  double load = 0.0;             // u = D / (B M)
  int served_units = 0;          // cells punctured this slot
  std::vector<int> units;        // punctured cells per RB, 0..M (rounded when built from weights)
  std::vector<double> fraction;  // rho * u per RB, in [0, 1]
  std::vector<double> weights;   // rho[k][b], row-major K x B
  std::vector<double> rb_loss;   // gamma_kb in kHz, row-major K x B
  std::vector<double> user_loss; // gamma_k in kHz

  double weight(int user, int rb) const { return weights[at(user, rb)]; }
  double loss(int user, int rb) const { return rb_loss[at(user, rb)]; }
  /// Fraction of RB b's cells punctured (rho * u), in [0, 1].
  double punctured_fraction(int rb) const { return fraction[static_cast<std::size_t>(rb)]; }

  std::size_t at(int user, int rb) const {
    return static_cast<std::size_t>(user) * static_cast<std::size_t>(rb_count) +
           static_cast<std::size_t>(rb);
  }
};

/// Loss from explicit weights and demand D. Throws ContractViolation if a
/// weight is negative, sits on an unallocated RB, or punctures more than the
/// whole RB, or if D exceeds the grid capacity.
PunctureDecision loss_from_weights(const AllocationMatrix& alloc, const std::vector<double>& weights,
                                   int demand, const ResourceGrid& grid, LossShape shape);

/// Decision for an integer placement of punctured cells per RB.
PunctureDecision decision_from_units(const AllocationMatrix& alloc, std::vector<int> units,
                                     const ResourceGrid& grid, LossShape shape);

/// All-zero decision (no URLLC traffic).
PunctureDecision empty_decision(const AllocationMatrix& alloc, const ResourceGrid& grid,
                                LossShape shape);

struct RateReport {
  std::vector<double> rate_bps;       // r_k
  std::vector<double> peak_rate_bps;  // r_k with gamma = 0
  std::vector<double> phi_khz;        // sum_b x_kb f_b
};

/// Shannon rate of every eMBB user:
///   r_k = sum_b (x_kb f_b - gamma_kb) log2(1 + sum_j p_kb^j h_kb^j / sigma^2).
RateReport embb_rate(const AllocationMatrix& alloc, const PunctureDecision& decision,
                     const PowerMap& power, const ChannelState& channel, const ResourceGrid& grid);

/// Compact form (phi - gamma) * per_unit_peak, where per_unit_peak is the peak
/// rate per kHz of allocated bandwidth (r_peak / phi).
double embb_rate_compact(double phi_khz, double gamma_khz, double per_unit_peak_bps_per_khz);

}  // namespace nrpunct
