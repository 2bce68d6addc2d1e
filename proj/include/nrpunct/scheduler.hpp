#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nrpunct/channel.hpp"
#include "nrpunct/grid.hpp"
#include "nrpunct/random.hpp"
#include "nrpunct/rate.hpp"

namespace nrpunct {

enum class SchedulerPolicy { proposed, ps, rs, eds };

std::string_view to_string(SchedulerPolicy policy);
SchedulerPolicy policy_from_string(std::string_view name);

struct SchedulerConfig {
  SchedulerPolicy policy = SchedulerPolicy::proposed;
  double r_min_bps = 5e6;
  double offset_khz = 180.0;
  double theta_max = 1e-5;  // URLLC outage target, reported by metrics

  void validate() const;
};

struct Threshold {
  enum class Branch { max_partial, max_full_minus_offset };
  double th_khz = 0.0;
  Branch branch = Branch::max_partial;
};

/// Puncturing-rate threshold: the largest per-user loss, reduced by `offset`
/// (floored at zero) when that user is fully punctured.
Threshold puncture_threshold(std::span<const double> user_loss_khz,
                             std::span<const double> phi_khz, double offset_khz);

/// Everything a scheduler sees in one slot. Non-owning.
struct SlotState {
  const ResourceGrid& grid;
  const AllocationMatrix& alloc;
  const PowerMap& power;
  const ChannelState& channel;
  int demand = 0;  // URLLC cells to place (one per packet)
};

/// One unit moved by the proposed scheduler, recorded for auditing.
struct PunctureMove {
  enum class Step { threshold_cap, rate_protection, maxmin_refinement };
  Step step;
  int from_user;
  int from_rb;
  int to_user;
  int to_rb;
  bool higher_power;  // target RB has more power than the source RB
  bool higher_gain;   // target RB has a larger antenna-summed gain
  bool lower_loss;    // target user had a smaller loss before the move
};

/// Threshold-based puncturing with minimum-rate protection.
///
/// 1. Spread the demand uniformly over the allocated RBs (rho = 1).
/// 2. Cap every user's loss at the puncture_threshold() value, moving any
///    excess to users with headroom below it.
/// 3. For each user whose rate is below r_min, move its cells one at a time to
///    another user k' that (a) has a higher-power RB, a stronger RB or a lower
///    loss, and (b) stays at or above r_min after the move. Stops once the user
///    reaches r_min or no such k' exists, in which case the user keeps the load.
/// 4. Repeatedly move a cell off the current minimum-rate user under the same
///    eligibility test, as long as the receiver ends above the old minimum.
///
/// Among eligible targets the one with the lowest post-move loss wins, then the
/// lowest user index, then the RB with the cheapest marginal rate. Cells leave
/// the source RB whose release restores the most rate. Deterministic.
PunctureDecision schedule_proposed(const SlotState& state, const LossSpec& spec,
                                   const SchedulerConfig& cfg,
                                   std::vector<PunctureMove>* moves = nullptr);

/// Punctured scheduling: fills the highest-SNR RBs first, M cells per RB.
/// Ties go to the lower (user, RB) index.
PunctureDecision schedule_ps(const SlotState& state, const LossSpec& spec);

/// Random scheduling: D allocated cells drawn uniformly without replacement.
PunctureDecision schedule_rs(const SlotState& state, const LossSpec& spec, RandomStream& stream);

/// Equally distributed scheduling: per-user shares are capped at the user's
/// cell count and otherwise differ by at most one, with the larger shares on
/// the lowest indices. Each share is dealt round-robin over the user's RBs.
PunctureDecision schedule_eds(const SlotState& state, const LossSpec& spec);

/// Dispatch on cfg.policy. `stream` is only consumed by the random scheduler.
PunctureDecision schedule(const SlotState& state, const LossSpec& spec, const SchedulerConfig& cfg,
                          RandomStream& stream);

/// Per-RB SNR toward the RB's owner (0 for unallocated RBs).
std::vector<double> rb_snr(const SlotState& state);

}  // namespace nrpunct
