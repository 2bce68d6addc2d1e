#include "nrpunct/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "nrpunct/errors.hpp"
#include "nrpunct/random.hpp"
#include "nrpunct/traffic.hpp"
#include "nrpunct/units.hpp"

namespace nrpunct {

std::string_view to_string(AntennaMode mode) {
  return mode == AntennaMode::siso ? "siso" : "miso";
}

AntennaMode antenna_mode_from_string(std::string_view name) {
  if (name == "siso") return AntennaMode::siso;
  if (name == "miso") return AntennaMode::miso;
  throw ConfigError("unknown antenna mode '" + std::string(name) + "' (expected siso or miso)");
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

template <typename T>
bool has_duplicates(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

}  // namespace

void SimConfig::validate() const {
  require(frame_slots >= 1, "frame_slots must be >= 1");
  require(frames >= 1, "frames must be >= 1");
  require(embb_users >= 1, "embb_users must be >= 1");
  require(urllc_users >= 1, "urllc_users must be >= 1");
  require(miso_antennas >= 1, "miso_antennas must be >= 1");
  require(cell_radius_m > 0.0, "cell_radius_m must be positive");
  require(min_distance_m > 0.0 && min_distance_m < cell_radius_m,
          "min_distance_m must lie in (0, cell_radius_m)");
  require(pathloss.exponent > 0.0, "pathloss_exponent must be positive");
  require(pathloss.reference_distance_m > 0.0, "reference_distance_m must be positive");
  require(std::isfinite(pathloss.reference_loss_db), "reference_loss_db must be finite");
  require(std::isfinite(noise_psd_dbm_hz), "noise_psd_dbm_hz must be finite");
  require(std::isfinite(p_max_dbm), "p_max_dbm must be finite");
  require(r_min_mbps > 0.0 && std::isfinite(r_min_mbps), "r_min_mbps must be positive");
  require(theta_max > 0.0 && theta_max < 1.0, "theta_max must lie in (0, 1)");
  require(packet_size_bytes >= 1, "packet_size_bytes must be >= 1");
  require(offset_khz >= 0.0 && std::isfinite(offset_khz), "offset_khz must be >= 0");
  require(!policies.empty(), "policies must not be empty");
  require(!loss_shapes.empty(), "loss_shapes must not be empty");
  require(!antenna_modes.empty(), "antenna_modes must not be empty");
  require(!lambdas.empty(), "lambdas must not be empty");
  for (double l : lambdas) {
    require(std::isfinite(l) && l >= 0.0, "lambda must be >= 0 (got " + std::to_string(l) + ")");
  }
  require(!has_duplicates(policies), "policies contain duplicates");
  require(!has_duplicates(loss_shapes), "loss_shapes contain duplicates");
  require(!has_duplicates(antenna_modes), "antenna_modes contain duplicates");
  require(!has_duplicates(lambdas), "lambdas contain duplicates");
  require(trials >= 1, "trials must be >= 1");
  require(threads >= 0, "threads must be >= 0");
  const ResourceGrid g = grid();
  require(embb_users <= g.rb_count, "K <= B violated: embb_users = " + std::to_string(embb_users) +
                                        " exceeds rb_count = " + std::to_string(g.rb_count));
}

ResourceGrid SimConfig::grid() const {
  return build_grid(numerology, total_bandwidth_khz, guard_band_khz, frame_slots);
}

bool operator==(const SimConfig& a, const SimConfig& b) {
  return a.numerology == b.numerology && a.total_bandwidth_khz == b.total_bandwidth_khz &&
         a.guard_band_khz == b.guard_band_khz && a.frame_slots == b.frame_slots &&
         a.frames == b.frames && a.embb_users == b.embb_users && a.urllc_users == b.urllc_users &&
         a.miso_antennas == b.miso_antennas && a.cell_radius_m == b.cell_radius_m &&
         a.min_distance_m == b.min_distance_m && a.pathloss.exponent == b.pathloss.exponent &&
         a.pathloss.reference_loss_db == b.pathloss.reference_loss_db &&
         a.pathloss.reference_distance_m == b.pathloss.reference_distance_m &&
         a.noise_psd_dbm_hz == b.noise_psd_dbm_hz && a.p_max_dbm == b.p_max_dbm &&
         a.r_min_mbps == b.r_min_mbps && a.theta_max == b.theta_max &&
         a.packet_size_bytes == b.packet_size_bytes && a.offset_khz == b.offset_khz &&
         a.policies == b.policies && a.loss_shapes == b.loss_shapes &&
         a.antenna_modes == b.antenna_modes && a.lambdas == b.lambdas && a.trials == b.trials &&
         a.seed == b.seed && a.threads == b.threads;
}

std::string CellSpec::label() const {
  std::ostringstream os;
  os << "policy=" << to_string(policy) << " loss_shape=" << to_string(shape)
     << " antenna_mode=" << to_string(mode) << " lambda=" << lambda;
  return os.str();
}

std::uint64_t trial_seed(std::uint64_t root_seed, int index) {
  return derive_seed(root_seed, 0x7472ULL, static_cast<std::uint64_t>(index));
}

TrialSetup prepare_trial(const SimConfig& cfg, const CellSpec& cell, std::uint64_t seed) {
  const ResourceGrid grid = cfg.grid();
  AllocationMatrix alloc = initial_allocation(grid, cfg.embb_users);
  RandomStream placement(derive_seed(seed, StreamPurpose::placement));
  std::vector<double> distances = place_users(placement, cfg.embb_users, cfg.urllc_users,
                                              cfg.cell_radius_m, cfg.min_distance_m);
  const int J = cfg.antennas(cell.mode);
  PowerMap power = allocate_power(alloc, J, dbm_to_watts(cfg.p_max_dbm));
  const double noise = thermal_noise_watts(grid.rb_bandwidth_khz(), cfg.noise_psd_dbm_hz);
  return TrialSetup{grid, std::move(alloc), std::move(distances), std::move(power), noise, J};
}

namespace {

[[noreturn]] void violated(const char* invariant, const std::string& detail) {
  throw InvariantViolation(invariant, detail);
}

}  // namespace

void verify_slot(const SimConfig& cfg, const TrialSetup& s, const PunctureDecision& d, int demand,
                 const RateReport& rates) {
  const double budget = dbm_to_watts(cfg.p_max_dbm);
  if (s.power.total() > budget * (1.0 + 1e-9)) {
    std::ostringstream os;
    os << "sum p = " << s.power.total() << " W exceeds P_max = " << budget << " W";
    violated("power budget", os.str());
  }
  const int expected = std::min(demand, s.grid.capacity_units());
  if (d.served_units != expected) {
    violated("conservation", "served " + std::to_string(d.served_units) + " units, expected " +
                                 std::to_string(expected));
  }
  const int placed = std::accumulate(d.units.begin(), d.units.end(), 0);
  if (placed != d.served_units) {
    violated("conservation", "per-RB units sum to " + std::to_string(placed) + ", served " +
                                 std::to_string(d.served_units));
  }
  const int M = s.grid.minislots();
  for (int b = 0; b < s.grid.rb_count; ++b) {
    const int u = d.units[static_cast<std::size_t>(b)];
    if (u < 0 || u > M) violated("cell capacity", "RB " + std::to_string(b) + " holds " +
                                                      std::to_string(u) + " units");
    if (u > 0 && s.alloc.owner(b) == kUnallocated) {
      violated("allocation", "unallocated RB " + std::to_string(b) + " punctured");
    }
  }
  for (int k = 0; k < s.alloc.users(); ++k) {
    const double phi = rates.phi_khz[static_cast<std::size_t>(k)];
    const double gamma = d.user_loss[static_cast<std::size_t>(k)];
    if (gamma < -1e-9 || gamma > phi * (1.0 + 1e-9) + 1e-9) {
      std::ostringstream os;
      os << "user " << k << " loss " << gamma << " kHz outside [0, " << phi << "]";
      violated("loss bounds", os.str());
    }
    const double r = rates.rate_bps[static_cast<std::size_t>(k)];
    if (!(r >= -1e-6) || !std::isfinite(r)) {
      violated("rate", "user " + std::to_string(k) + " rate " + std::to_string(r));
    }
  }
}

SlotMetrics run_slot(const SimConfig& cfg, const CellSpec& cell, const TrialSetup& setup,
                     int slot_index, std::uint64_t seed) {
  const auto idx = static_cast<std::uint64_t>(slot_index);
  RandomStream fading(derive_seed(seed, StreamPurpose::fading, idx));
  RandomStream traffic(derive_seed(seed, StreamPurpose::traffic, idx));
  RandomStream sched(derive_seed(seed, StreamPurpose::scheduler, idx));

  const ChannelState channel = sample_channel(fading, setup.distances, setup.grid, setup.antennas,
                                              cfg.pathloss, setup.noise_power_w);
  const UrllcArrivals arrivals =
      sample_arrivals(traffic, cell.lambda, setup.grid.minislots(), setup.grid.rb_count,
                      cfg.packet_size_bytes);

  const SlotState state{setup.grid, setup.alloc, setup.power, channel, arrivals.total};
  const LossSpec spec{cell.shape, cfg.offset_khz};
  SchedulerConfig scfg;
  scfg.policy = cell.policy;
  scfg.r_min_bps = cfg.r_min_bps();
  scfg.offset_khz = cfg.offset_khz;
  scfg.theta_max = cfg.theta_max;
  const PunctureDecision decision = schedule(state, spec, scfg, sched);
  const RateReport rates = embb_rate(setup.alloc, decision, setup.power, channel, setup.grid);

  verify_slot(cfg, setup, decision, arrivals.total, rates);

  SlotMetrics m;
  m.rate_bps = rates.rate_bps;
  m.min_rate_bps = *std::min_element(m.rate_bps.begin(), m.rate_bps.end());
  m.demand = arrivals.total;
  m.served_units = decision.served_units;
  if (arrivals.total > 0) {
    std::vector<int> urllc(static_cast<std::size_t>(cfg.urllc_users));
    std::iota(urllc.begin(), urllc.end(), cfg.embb_users);
    const double per_antenna =
        setup.power.total() /
        (static_cast<double>(setup.alloc.allocated_rb_count()) * setup.antennas);
    m.urllc_error = urllc_error_event(decision, channel, urllc, per_antenna,
                                      cfg.packet_size_bytes, arrivals.total, setup.grid);
  }
  return m;
}

TrialRecord run_trial_detailed(const SimConfig& cfg, const CellSpec& cell, std::uint64_t seed) {
  const TrialSetup setup = prepare_trial(cfg, cell, seed);
  const int slots = cfg.slots_per_trial();
  std::vector<SlotMetrics> metrics;
  metrics.reserve(static_cast<std::size_t>(slots));
  TrialRecord rec;
  for (int t = 0; t < slots; ++t) {
    metrics.push_back(run_slot(cfg, cell, setup, t, seed));
    rec.served_units += metrics.back().served_units;
    rec.capped_demand += std::min(metrics.back().demand, setup.grid.capacity_units());
  }
  rec.summary = summarize_trial(metrics, cfg.r_min_bps());
  return rec;
}

TrialResult run_trial(const SimConfig& cfg, const CellSpec& cell, std::uint64_t seed) {
  return run_trial_detailed(cfg, cell, seed).summary;
}

MeanStderr mean_stderr(const std::vector<double>& xs) {
  MeanStderr r;
  if (xs.empty()) return r;
  const double n = static_cast<double>(xs.size());
  r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() < 2) return r;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  return r;
}

const SweepCell* SweepResult::find(SchedulerPolicy policy, LossShape shape, AntennaMode mode,
                                   double lambda) const {
  for (const auto& c : cells) {
    if (c.spec.policy == policy && c.spec.shape == shape && c.spec.mode == mode &&
        c.spec.lambda == lambda) {
      return &c;
    }
  }
  return nullptr;
}

SweepResult run_sweep(const SimConfig& cfg, const SweepOptions& options) {
  cfg.validate();
  std::vector<CellSpec> specs;
  for (auto p : cfg.policies)
    for (auto s : cfg.loss_shapes)
      for (auto m : cfg.antenna_modes)
        for (double l : cfg.lambdas) specs.push_back(CellSpec{p, s, m, l});

  const int trials = cfg.trials;
  const std::size_t jobs = specs.size() * static_cast<std::size_t>(trials);
  std::vector<TrialRecord> records(jobs);

  int threads = options.threads.value_or(cfg.threads);
  if (threads <= 0) threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), jobs));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::vector<std::atomic<int>> remaining(specs.size());
  for (auto& r : remaining) r.store(trials);
  std::atomic<int> cells_done{0};
  std::mutex mu;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      const std::size_t c = job / static_cast<std::size_t>(trials);
      const int t = static_cast<int>(job % static_cast<std::size_t>(trials));
      try {
        records[job] = run_trial_detailed(cfg, specs[c], trial_seed(cfg.seed, t));
      } catch (const InvariantViolation& e) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) {
          const std::string what = e.what();
          const std::string detail = what.substr(std::min(what.size(), e.invariant().size() + 2));
          error = std::make_exception_ptr(
              InvariantViolation(e.invariant(), detail + " [cell " + specs[c].label() +
                                                    " trial " + std::to_string(t) + "]"));
        }
        failed.store(true);
        return;
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
      if (remaining[c].fetch_sub(1) == 1) {
        const int done = cells_done.fetch_add(1) + 1;
        if (options.on_cell_done) {
          std::lock_guard<std::mutex> lock(mu);
          options.on_cell_done(done, static_cast<int>(specs.size()), specs[c]);
        }
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  // Aggregation runs serially in trial order so the result does not depend on
  // thread scheduling.
  SweepResult out;
  out.seed = cfg.seed;
  out.cells.reserve(specs.size());
  for (std::size_t c = 0; c < specs.size(); ++c) {
    SweepCell cell;
    cell.spec = specs[c];
    cell.trials = trials;
    std::vector<double> outage;
    for (int t = 0; t < trials; ++t) {
      const auto& r = records[c * static_cast<std::size_t>(trials) + static_cast<std::size_t>(t)];
      cell.trial_min_rate_bps.push_back(r.summary.mean_min_rate_bps);
      cell.trial_reliability.push_back(r.summary.embb_reliability);
      outage.push_back(r.summary.urllc_outage);
      out.slot_evaluations += r.summary.slots;
      out.served_units += r.served_units;
      out.capped_demand += r.capped_demand;
    }
    const auto rate = mean_stderr(cell.trial_min_rate_bps);
    const auto rel = mean_stderr(cell.trial_reliability);
    const auto out_ms = mean_stderr(outage);
    cell.mean_min_rate_bps = rate.mean;
    cell.min_rate_stderr_bps = rate.stderr_;
    cell.embb_reliability = rel.mean;
    cell.reliability_stderr = rel.stderr_;
    cell.urllc_outage = out_ms.mean;
    cell.outage_stderr = out_ms.stderr_;
    out.cells.push_back(std::move(cell));
  }
  return out;
}

}  // namespace nrpunct
