#include "nrpunct/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "nrpunct/errors.hpp"
#include "nrpunct/units.hpp"

namespace nrpunct {

std::string_view to_string(SchedulerPolicy policy) {
  switch (policy) {
    case SchedulerPolicy::proposed:
      return "proposed";
    case SchedulerPolicy::ps:
      return "ps";
    case SchedulerPolicy::rs:
      return "rs";
    case SchedulerPolicy::eds:
      return "eds";
  }
  return "?";
}

SchedulerPolicy policy_from_string(std::string_view name) {
  if (name == "proposed") return SchedulerPolicy::proposed;
  if (name == "ps") return SchedulerPolicy::ps;
  if (name == "rs") return SchedulerPolicy::rs;
  if (name == "eds") return SchedulerPolicy::eds;
  throw ConfigError("unknown scheduler policy '" + std::string(name) +
                    "' (expected proposed|ps|rs|eds)");
}

void SchedulerConfig::validate() const {
  if (!(r_min_bps > 0.0)) throw ConfigError("R_min must be positive");
  if (!(theta_max > 0.0 && theta_max < 1.0)) throw ConfigError("theta_max must lie in (0, 1)");
  if (!(offset_khz >= 0.0)) throw ConfigError("threshold offset must be non-negative");
}

Threshold puncture_threshold(std::span<const double> user_loss_khz,
                             std::span<const double> phi_khz, double offset_khz) {
  if (user_loss_khz.empty() || user_loss_khz.size() != phi_khz.size()) {
    throw ContractViolation("puncture_threshold needs matching, non-empty loss and phi lists");
  }
  std::size_t arg = 0;
  for (std::size_t k = 1; k < user_loss_khz.size(); ++k) {
    if (user_loss_khz[k] > user_loss_khz[arg]) arg = k;
  }
  Threshold th;
  const double top = user_loss_khz[arg];
  const double phi = phi_khz[arg];
  if (phi > 0.0 && top >= phi * (1.0 - 1e-12)) {
    th.branch = Threshold::Branch::max_full_minus_offset;
    th.th_khz = std::max(top - offset_khz, 0.0);
  } else {
    th.branch = Threshold::Branch::max_partial;
    th.th_khz = top;
  }
  return th;
}

std::vector<double> rb_snr(const SlotState& state) {
  std::vector<double> s(static_cast<std::size_t>(state.grid.rb_count), 0.0);
  for (int b = 0; b < state.grid.rb_count; ++b) {
    const int k = state.alloc.owner(b);
    if (k == kUnallocated) continue;
    s[static_cast<std::size_t>(b)] =
        snr(state.power.powers(b), state.channel.gains(k, b), state.channel.noise_power());
  }
  return s;
}

namespace {

int served_demand(const SlotState& state) {
  if (state.demand < 0) throw ContractViolation("negative URLLC demand");
  if (state.demand > state.grid.capacity_units()) {
    throw ContractViolation("URLLC demand exceeds B x M");
  }
  const int capacity = state.alloc.allocated_rb_count() * state.grid.minislots();
  return std::min(state.demand, capacity);
}

/// Mutable cell placement with incrementally maintained per-user loss and rate.
class Placement {
public:
  Placement(const SlotState& state, LossShape shape)
      : state_(state),
        shape_(shape),
        fb_(state.grid.rb_bandwidth_khz()),
        m_(state.grid.minislots()),
        units_(static_cast<std::size_t>(state.grid.rb_count), 0),
        se_(static_cast<std::size_t>(state.grid.rb_count), 0.0),
        loss_(static_cast<std::size_t>(state.alloc.users()), 0.0),
        rate_(static_cast<std::size_t>(state.alloc.users()), 0.0),
        phi_(static_cast<std::size_t>(state.alloc.users()), 0.0) {
    const auto snrs = rb_snr(state);
    for (int b = 0; b < rb_count(); ++b) {
      const int k = owner(b);
      if (k == kUnallocated) continue;
      se_[idx(b)] = std::log2(1.0 + snrs[idx(b)]);
      phi_[idx(k)] += fb_;
      rate_[idx(k)] += khz_to_hz(fb_) * se_[idx(b)];
    }
  }

  int rb_count() const { return static_cast<int>(units_.size()); }
  int users() const { return static_cast<int>(loss_.size()); }
  int owner(int b) const { return state_.alloc.owner(b); }
  int units(int b) const { return units_[idx(b)]; }
  double se(int b) const { return se_[idx(b)]; }
  double loss(int k) const { return loss_[idx(k)]; }
  double rate(int k) const { return rate_[idx(k)]; }
  const std::vector<double>& losses() const { return loss_; }
  const std::vector<double>& phis() const { return phi_; }
  const std::vector<int>& all_units() const { return units_; }
  bool has_room(int b) const { return owner(b) != kUnallocated && units(b) < m_; }

  /// Loss change on RB b when its cell count moves by `delta`.
  double loss_step(int b, int delta) const {
    const int n = units(b);
    return rb_loss_khz(fb_, static_cast<double>(n + delta) / m_, shape_) -
           rb_loss_khz(fb_, static_cast<double>(n) / m_, shape_);
  }
  /// Rate change of RB b's owner when its cell count moves by `delta`.
  double rate_step(int b, int delta) const { return -khz_to_hz(loss_step(b, delta)) * se(b); }

  void add(int b, int delta) {
    const int k = owner(b);
    const double dl = loss_step(b, delta);
    loss_[idx(k)] += dl;
    rate_[idx(k)] -= khz_to_hz(dl) * se(b);
    units_[idx(b)] += delta;
  }

  /// Largest loss increase a single cell can cause.
  double unit_granularity() const {
    return rb_loss_khz(fb_, 1.0, shape_) -
           rb_loss_khz(fb_, static_cast<double>(m_ - 1) / m_, shape_);
  }

  /// Punctured RB of `user` whose release restores the most rate.
  std::optional<int> best_source(int user) const {
    std::optional<int> best;
    double best_gain = -1.0;
    for (int b = 0; b < rb_count(); ++b) {
      if (owner(b) != user || units(b) == 0) continue;
      const double g = rate_step(b, -1);
      if (g > best_gain) {
        best_gain = g;
        best = b;
      }
    }
    return best;
  }

private:
  static std::size_t idx(int i) { return static_cast<std::size_t>(i); }

  const SlotState& state_;
  LossShape shape_;
  double fb_;
  int m_;
  std::vector<int> units_;
  std::vector<double> se_;
  std::vector<double> loss_;
  std::vector<double> rate_;
  std::vector<double> phi_;
};

struct Candidate {
  int user;
  int rb;
  double post_loss;
  double rate_cost;
  bool higher_power;
  bool higher_gain;
  bool lower_loss;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.post_loss != b.post_loss) return a.post_loss < b.post_loss;
  if (a.user != b.user) return a.user < b.user;
  if (a.rate_cost != b.rate_cost) return a.rate_cost < b.rate_cost;
  return a.rb < b.rb;
}

/// Scan targets for a cell leaving (from_user, from_rb). `accept` sees the
/// candidate with its post-move rate and decides admissibility.
template <typename Accept>
std::optional<Candidate> pick_target(const Placement& pl, const SlotState& state, int from_user,
                                     int from_rb, bool require_condition, Accept accept) {
  std::optional<Candidate> best;
  const double src_power = state.power.rb_power(from_rb);
  const double src_gain = state.channel.gain_sum(from_user, from_rb);
  // Losses are accumulated incrementally; equal losses may differ by rounding.
  const double tie = 1e-9 * state.grid.rb_bandwidth_khz();
  for (int b = 0; b < pl.rb_count(); ++b) {
    const int k = pl.owner(b);
    if (k == kUnallocated || k == from_user || !pl.has_room(b)) continue;
    Candidate c;
    c.user = k;
    c.rb = b;
    c.higher_power = state.power.rb_power(b) > src_power;
    c.higher_gain = state.channel.gain_sum(k, b) > src_gain;
    c.lower_loss = pl.loss(k) < pl.loss(from_user) - tie;
    if (require_condition && !(c.higher_power || c.higher_gain || c.lower_loss)) continue;
    c.post_loss = pl.loss(k) + pl.loss_step(b, +1);
    c.rate_cost = -pl.rate_step(b, +1);
    if (!accept(c, pl.rate(k) - c.rate_cost)) continue;
    if (!best || better(c, *best)) best = c;
  }
  return best;
}

void apply_move(Placement& pl, int from_user, int from_rb, const Candidate& c,
                PunctureMove::Step step, std::vector<PunctureMove>* log) {
  pl.add(from_rb, -1);
  pl.add(c.rb, +1);
  if (log) {
    log->push_back(PunctureMove{step, from_user, from_rb, c.user, c.rb, c.higher_power,
                                c.higher_gain, c.lower_loss});
  }
}

PunctureDecision finish(const SlotState& state, const LossSpec& spec, std::vector<int> units) {
  return decision_from_units(state.alloc, std::move(units), state.grid, spec.shape);
}

}  // namespace

PunctureDecision schedule_proposed(const SlotState& state, const LossSpec& spec,
                                   const SchedulerConfig& cfg, std::vector<PunctureMove>* moves) {
  const int demand = served_demand(state);
  Placement pl(state, spec.shape);
  if (demand == 0) return finish(state, spec, pl.all_units());

  // 1. Provisional uniform spread, dealt cyclically over allocated RBs.
  std::vector<int> active;
  for (int b = 0; b < pl.rb_count(); ++b) {
    if (pl.owner(b) != kUnallocated) active.push_back(b);
  }
  for (int i = 0; i < demand; ++i) pl.add(active[static_cast<std::size_t>(i) % active.size()], +1);

  // 2. Threshold cap.
  const Threshold th = puncture_threshold(pl.losses(), pl.phis(), cfg.offset_khz);
  const double eps = 1e-9 * state.grid.rb_bandwidth_khz();
  for (int k = 0; k < pl.users(); ++k) {
    while (pl.loss(k) > th.th_khz + eps) {
      const auto src = pl.best_source(k);
      if (!src) break;
      const auto target = pick_target(pl, state, k, *src, false, [&](const Candidate& c, double) {
        return c.post_loss <= th.th_khz + eps;
      });
      if (!target) break;
      apply_move(pl, k, *src, *target, PunctureMove::Step::threshold_cap, moves);
    }
  }

  // 3. Minimum-rate protection.
  const double r_min = cfg.r_min_bps;
  for (int k = 0; k < pl.users(); ++k) {
    while (pl.rate(k) < r_min) {
      const auto src = pl.best_source(k);
      if (!src) break;
      const auto target = pick_target(pl, state, k, *src, true, [&](const Candidate&, double r) {
        return r >= r_min;
      });
      if (!target) break;  // keep puncturing user k
      apply_move(pl, k, *src, *target, PunctureMove::Step::rate_protection, moves);
    }
  }

  // 4. Max-min refinement. Each move strictly raises the sorted rate vector
  // lexicographically, so the loop terminates; the bound is a backstop.
  const long max_moves = 4L * demand * pl.users() + 64;
  for (long it = 0; it < max_moves; ++it) {
    int worst = 0;
    for (int k = 1; k < pl.users(); ++k) {
      if (pl.rate(k) < pl.rate(worst)) worst = k;
    }
    const auto src = pl.best_source(worst);
    if (!src) break;
    const double floor = pl.rate(worst);
    const double tol = 1e-12 * std::max(1.0, std::abs(floor));
    const auto target = pick_target(pl, state, worst, *src, true, [&](const Candidate&, double r) {
      return r > floor + tol;
    });
    if (!target) break;
    apply_move(pl, worst, *src, *target, PunctureMove::Step::maxmin_refinement, moves);
  }

  return finish(state, spec, pl.all_units());
}

PunctureDecision schedule_ps(const SlotState& state, const LossSpec& spec) {
  int left = served_demand(state);
  const auto snrs = rb_snr(state);
  std::vector<int> order;
  for (int b = 0; b < state.grid.rb_count; ++b) {
    if (state.alloc.owner(b) != kUnallocated) order.push_back(b);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double sa = snrs[static_cast<std::size_t>(a)];
    const double sb = snrs[static_cast<std::size_t>(b)];
    if (sa != sb) return sa > sb;
    const int ka = state.alloc.owner(a);
    const int kb = state.alloc.owner(b);
    if (ka != kb) return ka < kb;
    return a < b;
  });
  std::vector<int> units(static_cast<std::size_t>(state.grid.rb_count), 0);
  const int m = state.grid.minislots();
  for (int b : order) {
    if (left == 0) break;
    const int n = std::min(m, left);
    units[static_cast<std::size_t>(b)] = n;
    left -= n;
  }
  return finish(state, spec, std::move(units));
}

PunctureDecision schedule_rs(const SlotState& state, const LossSpec& spec, RandomStream& stream) {
  const int demand = served_demand(state);
  const int m = state.grid.minislots();
  std::vector<int> cells;  // RB index of every allocated (RB, mini-slot) cell
  for (int b = 0; b < state.grid.rb_count; ++b) {
    if (state.alloc.owner(b) == kUnallocated) continue;
    for (int i = 0; i < m; ++i) cells.push_back(b);
  }
  std::vector<int> units(static_cast<std::size_t>(state.grid.rb_count), 0);
  // Partial Fisher-Yates: the first `demand` slots become a uniform sample.
  for (int i = 0; i < demand; ++i) {
    const auto remaining = static_cast<std::uint64_t>(cells.size() - static_cast<std::size_t>(i));
    const auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(stream.below(remaining));
    std::swap(cells[static_cast<std::size_t>(i)], cells[j]);
    ++units[static_cast<std::size_t>(cells[static_cast<std::size_t>(i)])];
  }
  return finish(state, spec, std::move(units));
}

PunctureDecision schedule_eds(const SlotState& state, const LossSpec& spec) {
  const int demand = served_demand(state);
  const int K = state.alloc.users();
  const int m = state.grid.minislots();
  std::vector<int> cap(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) cap[static_cast<std::size_t>(k)] = state.alloc.rb_count_of(k) * m;

  // Fill level L: every user holds min(cap, L) cells and the remainder goes
  // one each to the lowest-index users whose cap exceeds L.
  const auto filled = [&](int level) {
    int total = 0;
    for (int c : cap) total += std::min(c, level);
    return total;
  };
  int level = 0;
  const int top = *std::max_element(cap.begin(), cap.end());
  while (level < top && filled(level + 1) <= demand) ++level;
  int rest = demand - filled(level);
  std::vector<int> share(static_cast<std::size_t>(K), 0);
  for (int k = 0; k < K; ++k) {
    const auto i = static_cast<std::size_t>(k);
    share[i] = std::min(cap[i], level);
    if (rest > 0 && cap[i] > level) {
      ++share[i];
      --rest;
    }
  }

  std::vector<int> units(static_cast<std::size_t>(state.grid.rb_count), 0);
  for (int k = 0; k < K; ++k) {
    const auto rbs = state.alloc.rbs_of(k);
    for (int i = 0; i < share[static_cast<std::size_t>(k)]; ++i) {
      ++units[static_cast<std::size_t>(rbs[static_cast<std::size_t>(i) % rbs.size()])];
    }
  }
  return finish(state, spec, std::move(units));
}

PunctureDecision schedule(const SlotState& state, const LossSpec& spec, const SchedulerConfig& cfg,
                          RandomStream& stream) {
  switch (cfg.policy) {
    case SchedulerPolicy::proposed:
      return schedule_proposed(state, spec, cfg);
    case SchedulerPolicy::ps:
      return schedule_ps(state, spec);
    case SchedulerPolicy::rs:
      return schedule_rs(state, spec, stream);
    case SchedulerPolicy::eds:
      return schedule_eds(state, spec);
  }
  throw ContractViolation("unknown scheduler policy");
}

}  // namespace nrpunct
