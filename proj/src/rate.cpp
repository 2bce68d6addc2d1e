#include "nrpunct/rate.hpp"

#include <cmath>
#include <string>

#include "nrpunct/errors.hpp"
#include "nrpunct/units.hpp"

namespace nrpunct {

namespace {
constexpr double kFractionSlack = 1e-9;
}

std::string_view to_string(LossShape shape) {
  switch (shape) {
    case LossShape::linear:
      return "linear";
    case LossShape::convex_quadratic:
      return "convex";
  }
  return "?";
}

LossShape loss_shape_from_string(std::string_view name) {
  if (name == "linear") return LossShape::linear;
  if (name == "convex" || name == "convex_quadratic") return LossShape::convex_quadratic;
  throw ConfigError("unknown loss shape '" + std::string(name) + "' (expected linear|convex)");
}

double rb_loss_khz(double rb_bandwidth_khz, double punctured, LossShape shape) {
  switch (shape) {
    case LossShape::linear:
      return rb_bandwidth_khz * punctured;
    case LossShape::convex_quadratic:
      return rb_bandwidth_khz * punctured * punctured;
  }
  return 0.0;
}

PunctureDecision loss_from_weights(const AllocationMatrix& alloc, const std::vector<double>& weights,
                                   int demand, const ResourceGrid& grid, LossShape shape) {
  const int K = alloc.users();
  const int B = grid.rb_count;
  if (alloc.rb_count() != B) throw ContractViolation("allocation does not match grid");
  if (weights.size() != static_cast<std::size_t>(K) * static_cast<std::size_t>(B)) {
    throw ContractViolation("weight matrix must be K x B");
  }
  if (demand < 0 || demand > grid.capacity_units()) {
    throw ContractViolation("demand outside [0, B x M]");
  }

  PunctureDecision d;
  d.users = K;
  d.rb_count = B;
  d.minislots = grid.minislots();
  d.shape = shape;
  d.load = static_cast<double>(demand) / grid.capacity_units();
  d.weights = weights;
  d.rb_loss.assign(weights.size(), 0.0);
  d.user_loss.assign(static_cast<std::size_t>(K), 0.0);
  d.units.assign(static_cast<std::size_t>(B), 0);
  d.fraction.assign(static_cast<std::size_t>(B), 0.0);

  const double fb = grid.rb_bandwidth_khz();
  for (int k = 0; k < K; ++k) {
    for (int b = 0; b < B; ++b) {
      const double rho = weights[d.at(k, b)];
      if (!(rho >= 0.0)) throw ContractViolation("puncture weight must be non-negative");
      if (rho == 0.0) continue;
      if (!alloc.allocated(k, b)) {
        throw ContractViolation("puncture weight on an RB the user does not own");
      }
      const double q = rho * d.load;
      if (q > 1.0 + kFractionSlack) {
        throw ContractViolation("puncture weight exceeds the RB (rho * D / (B M) > 1)");
      }
      const double gamma = rb_loss_khz(fb, std::min(q, 1.0), shape);
      d.rb_loss[d.at(k, b)] = gamma;
      d.user_loss[static_cast<std::size_t>(k)] += gamma;
      d.fraction[static_cast<std::size_t>(b)] = std::min(q, 1.0);
      d.units[static_cast<std::size_t>(b)] =
          static_cast<int>(std::lround(std::min(q, 1.0) * d.minislots));
    }
  }
  double cells = 0.0;
  for (double q : d.fraction) cells += q * d.minislots;
  d.served_units = static_cast<int>(std::lround(cells));
  return d;
}

PunctureDecision decision_from_units(const AllocationMatrix& alloc, std::vector<int> units,
                                     const ResourceGrid& grid, LossShape shape) {
  const int K = alloc.users();
  const int B = grid.rb_count;
  const int M = grid.minislots();
  if (units.size() != static_cast<std::size_t>(B)) throw ContractViolation("units must have B entries");

  int total = 0;
  for (int b = 0; b < B; ++b) {
    const int n = units[static_cast<std::size_t>(b)];
    if (n < 0 || n > M) throw ContractViolation("RB punctured outside [0, M] cells");
    if (n > 0 && alloc.owner(b) == kUnallocated) {
      throw ContractViolation("punctured cells on an unallocated RB");
    }
    total += n;
  }

  PunctureDecision d;
  d.users = K;
  d.rb_count = B;
  d.minislots = M;
  d.shape = shape;
  d.load = static_cast<double>(total) / grid.capacity_units();
  d.served_units = total;
  d.weights.assign(static_cast<std::size_t>(K) * static_cast<std::size_t>(B), 0.0);
  d.rb_loss.assign(d.weights.size(), 0.0);
  d.user_loss.assign(static_cast<std::size_t>(K), 0.0);
  d.fraction.assign(static_cast<std::size_t>(B), 0.0);

  const double fb = grid.rb_bandwidth_khz();
  for (int b = 0; b < B; ++b) {
    const int n = units[static_cast<std::size_t>(b)];
    if (n == 0) continue;
    const int k = alloc.owner(b);
    const double q = static_cast<double>(n) / M;
    d.fraction[static_cast<std::size_t>(b)] = q;
    d.weights[d.at(k, b)] = q / d.load;
    const double gamma = rb_loss_khz(fb, q, shape);
    d.rb_loss[d.at(k, b)] = gamma;
    d.user_loss[static_cast<std::size_t>(k)] += gamma;
  }
  d.units = std::move(units);
  return d;
}

PunctureDecision empty_decision(const AllocationMatrix& alloc, const ResourceGrid& grid,
                                LossShape shape) {
  return decision_from_units(alloc, std::vector<int>(static_cast<std::size_t>(grid.rb_count), 0),
                             grid, shape);
}

RateReport embb_rate(const AllocationMatrix& alloc, const PunctureDecision& decision,
                     const PowerMap& power, const ChannelState& channel, const ResourceGrid& grid) {
  const int K = alloc.users();
  const int B = grid.rb_count;
  if (decision.users != K || decision.rb_count != B || channel.rb_count() != B ||
      channel.users() < K || power.antennas() != channel.antennas()) {
    throw ContractViolation("embb_rate inputs are not dimensionally consistent");
  }
  RateReport r;
  r.rate_bps.assign(static_cast<std::size_t>(K), 0.0);
  r.peak_rate_bps.assign(static_cast<std::size_t>(K), 0.0);
  r.phi_khz.assign(static_cast<std::size_t>(K), 0.0);

  const double fb = grid.rb_bandwidth_khz();
  for (int b = 0; b < B; ++b) {
    const int k = alloc.owner(b);
    if (k == kUnallocated) continue;
    const double gamma = decision.loss(k, b);
    if (gamma > fb * (1.0 + kFractionSlack)) {
      throw ContractViolation("negative effective bandwidth on an RB");
    }
    const double se =
        std::log2(1.0 + snr(power.powers(b), channel.gains(k, b), channel.noise_power()));
    const auto ku = static_cast<std::size_t>(k);
    r.phi_khz[ku] += fb;
    r.peak_rate_bps[ku] += khz_to_hz(fb) * se;
    r.rate_bps[ku] += khz_to_hz(std::max(fb - gamma, 0.0)) * se;
  }
  return r;
}

double embb_rate_compact(double phi_khz, double gamma_khz, double per_unit_peak_bps_per_khz) {
  if (gamma_khz < 0.0 || gamma_khz > phi_khz * (1.0 + kFractionSlack)) {
    throw ContractViolation("compact rate needs 0 <= gamma <= phi");
  }
  return std::max(phi_khz - gamma_khz, 0.0) * per_unit_peak_bps_per_khz;
}

}  // namespace nrpunct
