#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nrpunct/channel.hpp"
#include "nrpunct/grid.hpp"
#include "nrpunct/metrics.hpp"
#include "nrpunct/rate.hpp"
#include "nrpunct/scheduler.hpp"

namespace nrpunct {

enum class AntennaMode { siso, miso };

std::string_view to_string(AntennaMode mode);
AntennaMode antenna_mode_from_string(std::string_view name);

/// Simulation parameters. Defaults reproduce the reference 20 MHz, mu = 0
/// deployment: 103 RBs, 7 mini-slots, 10-slot frame, 5 eMBB users, 500 m
/// cell, 40 dBm, R_min = 5 Mbps, 50-byte URLLC packets.
struct SimConfig {
  int numerology = 0;
  double total_bandwidth_khz = 20000.0;
  double guard_band_khz = 692.5;
  int frame_slots = 10;
  int frames = 1;

  int embb_users = 5;
  int urllc_users = 3;
  int miso_antennas = 4;

  double cell_radius_m = 500.0;
  double min_distance_m = 10.0;
  PathLossModel pathloss{};
  double noise_psd_dbm_hz = -174.0;
  double p_max_dbm = 40.0;

  double r_min_mbps = 5.0;
  double theta_max = 1e-5;
  int packet_size_bytes = 50;
  double offset_khz = 180.0;

  std::vector<SchedulerPolicy> policies{SchedulerPolicy::proposed, SchedulerPolicy::ps,
                                        SchedulerPolicy::rs, SchedulerPolicy::eds};
  std::vector<LossShape> loss_shapes{LossShape::linear, LossShape::convex_quadratic};
  std::vector<AntennaMode> antenna_modes{AntennaMode::siso, AntennaMode::miso};
  std::vector<double> lambdas{10, 20, 30, 40, 50, 60, 70};

  int trials = 500;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: one per hardware thread

  /// Throws ConfigError naming the violated rule.
  void validate() const;
  ResourceGrid grid() const;
  int antennas(AntennaMode mode) const { return mode == AntennaMode::siso ? 1 : miso_antennas; }
  int slots_per_trial() const { return frame_slots * frames; }
  double r_min_bps() const { return r_min_mbps * 1e6; }
};

bool operator==(const SimConfig& a, const SimConfig& b);

/// One cell of the sweep grid.
struct CellSpec {
  SchedulerPolicy policy = SchedulerPolicy::proposed;
  LossShape shape = LossShape::linear;
  AntennaMode mode = AntennaMode::siso;
  double lambda = 0.0;

  std::string label() const;
};

/// Per-trial quantities that stay fixed across the slots of a trial.
struct TrialSetup {
  ResourceGrid grid;
  AllocationMatrix alloc;
  std::vector<double> distances;  // eMBB users then URLLC users
  PowerMap power;
  double noise_power_w;
  int antennas;
};

/// Seed of trial `index`. It depends only on the root seed and the index, so
/// every cell of a sweep sees the same user drops and fading (common random
/// numbers across policies, shapes and loads).
std::uint64_t trial_seed(std::uint64_t root_seed, int index);

TrialSetup prepare_trial(const SimConfig& cfg, const CellSpec& cell, std::uint64_t seed);

/// Per-slot audit: power budget, served cells = min(D, B x M), per-RB cell
/// bounds, 0 <= gamma_k <= phi_k and finite non-negative rates. Throws
/// InvariantViolation naming the first failed check.
void verify_slot(const SimConfig& cfg, const TrialSetup& setup, const PunctureDecision& decision,
                 int demand, const RateReport& rates);

/// One slot: sample channel and arrivals, schedule, evaluate rates and URLLC
/// outage. Throws InvariantViolation if the power budget, demand conservation
/// or loss bounds fail.
SlotMetrics run_slot(const SimConfig& cfg, const CellSpec& cell, const TrialSetup& setup,
                     int slot_index, std::uint64_t seed);

struct TrialRecord {
  TrialResult summary;
  long long served_units = 0;
  long long capped_demand = 0;  // sum over slots of min(D, capacity)
};

TrialRecord run_trial_detailed(const SimConfig& cfg, const CellSpec& cell, std::uint64_t seed);
TrialResult run_trial(const SimConfig& cfg, const CellSpec& cell, std::uint64_t seed);

struct SweepCell {
  CellSpec spec;
  double mean_min_rate_bps = 0.0;
  double min_rate_stderr_bps = 0.0;
  double embb_reliability = 0.0;
  double reliability_stderr = 0.0;
  double urllc_outage = 0.0;
  double outage_stderr = 0.0;
  int trials = 0;
  std::vector<double> trial_min_rate_bps;    // indexed by trial
  std::vector<double> trial_reliability;     // indexed by trial
};

struct SweepResult {
  std::uint64_t seed = 0;
  std::vector<SweepCell> cells;
  long long slot_evaluations = 0;
  long long served_units = 0;
  long long capped_demand = 0;  // sum over slots of min(D, B x M)

  const SweepCell* find(SchedulerPolicy policy, LossShape shape, AntennaMode mode,
                        double lambda) const;
};

struct SweepOptions {
  std::optional<int> threads;  // overrides SimConfig::threads
  std::function<void(int done, int total, const CellSpec&)> on_cell_done;
};

/// All cells of policies x loss shapes x antenna modes x lambdas, in that
/// nesting order. Trials may run concurrently; the result is identical to a
/// serial run.
SweepResult run_sweep(const SimConfig& cfg, const SweepOptions& options = {});

/// Mean and standard error of the mean (zero for fewer than two samples).
struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};
MeanStderr mean_stderr(const std::vector<double>& xs);

}  // namespace nrpunct
