#include <doctest.h>

#include <vector>

#include "nrpunct/errors.hpp"
#include "nrpunct/metrics.hpp"

using namespace nrpunct;

namespace {

/// One RB owned by eMBB user 0; user 1 is the URLLC receiver.
struct OneRb {
  ResourceGrid grid = build_grid(0, 180.0, 0.0, 1);
  AllocationMatrix alloc{1, {0}};
  ChannelState channel{2, 1, 1, {50.0, 50.0}, 1e-13};
  double p = 0.5;

  void set_urllc_snr(double s) { channel.gain(1, 0, 0) = s * channel.noise_power() / p; }
};

const std::vector<int> kUrllc{1};

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("no demand is never an error") {
    OneRb f;
    f.set_urllc_snr(3.0);
    const auto d = empty_decision(f.alloc, f.grid, LossShape::linear);
    CHECK_FALSE(urllc_error_event(d, f.channel, kUrllc, f.p, 50, 0, f.grid));
  }

  TEST_CASE("positive demand with nothing punctured is an error") {
    OneRb f;
    f.set_urllc_snr(1e6);
    const auto d = empty_decision(f.alloc, f.grid, LossShape::linear);
    CHECK(urllc_capacity_bits(d, f.channel, kUrllc, f.p, f.grid) == 0.0);
    CHECK(urllc_error_event(d, f.channel, kUrllc, f.p, 50, 1, f.grid));
  }

  TEST_CASE("capacity boundary is a success") {
    // gamma = f_b = 180 kHz, N = 1, one slot of 1 ms:
    //   C = 180 / 180 * log2(1 + snr) * 180 = 360 bits = 8 * 45 bytes at snr = 3.
    OneRb f;
    const auto d = decision_from_units(f.alloc, {7}, f.grid, LossShape::linear);
    f.set_urllc_snr(3.0);
    CHECK(urllc_capacity_bits(d, f.channel, kUrllc, f.p, f.grid) == doctest::Approx(360.0));
    CHECK_FALSE(urllc_error_event(d, f.channel, kUrllc, f.p, 45, 1, f.grid));
    f.set_urllc_snr(3.0 * 1.01);
    CHECK_FALSE(urllc_error_event(d, f.channel, kUrllc, f.p, 45, 1, f.grid));
    f.set_urllc_snr(3.0 * 0.99);
    CHECK(urllc_error_event(d, f.channel, kUrllc, f.p, 45, 1, f.grid));
  }

  TEST_CASE("capacity splits across URLLC users and sums antennas") {
    const auto grid = build_grid(0, 180.0, 0.0, 1);
    const AllocationMatrix alloc(1, {0});
    ChannelState ch(3, 1, 2, {50.0, 50.0, 50.0}, 1e-13);
    const double p = 0.25;
    // User 1: SNR 3 (two antennas at 1.5 each). User 2: SNR 15.
    for (int j = 0; j < 2; ++j) {
      ch.gain(1, 0, j) = 1.5 * 1e-13 / p;
      ch.gain(2, 0, j) = 7.5 * 1e-13 / p;
    }
    const auto d = decision_from_units(alloc, {7}, grid, LossShape::linear);
    const std::vector<int> users{1, 2};
    // 180 / (180 * 2) * (2 + 4) * 180 = 540
    CHECK(urllc_capacity_bits(d, ch, users, p, grid) == doctest::Approx(540.0));
  }

  TEST_CASE("more puncturing never creates an error") {
    OneRb f;
    f.set_urllc_snr(200.0);
    for (auto shape : {LossShape::linear, LossShape::convex_quadratic}) {
      double prev_capacity = -1.0;
      bool prev_error = true;
      for (int n = 0; n <= 7; ++n) {
        const auto d = decision_from_units(f.alloc, {n}, f.grid, shape);
        const double c = urllc_capacity_bits(d, f.channel, kUrllc, f.p, f.grid);
        const bool err = urllc_error_event(d, f.channel, kUrllc, f.p, 50, 2, f.grid);
        CHECK(c >= prev_capacity);
        if (!prev_error) CHECK_FALSE(err);
        prev_capacity = c;
        prev_error = err;
      }
    }
  }

  TEST_CASE("reliability counts samples at or above r_min") {
    const std::vector<double> hi{5e6, 6e6, 7e6};
    const std::vector<double> lo{1e6, 4.9e6};
    const std::vector<double> half{1e6, 5e6, 2e6, 8e6};
    CHECK(embb_reliability(hi, 5e6) == 1.0);
    CHECK(embb_reliability(lo, 5e6) == 0.0);
    CHECK(embb_reliability(half, 5e6) == 0.5);
    CHECK_THROWS_AS(embb_reliability(std::vector<double>{}, 5e6), ContractViolation);
  }

  TEST_CASE("objective is the mean of per-slot minima") {
    CHECK(objective_value({{3.0, 3.0}, {3.0, 3.0}}) == 3.0);
    CHECK(objective_value({{4.0, 2.0, 9.0}}) == 2.0);
    CHECK(objective_value({{4.0, 2.0}, {1.0, 7.0}}) == 1.5);
    CHECK_THROWS_AS(objective_value(std::vector<std::vector<double>>{}), ContractViolation);
  }

  TEST_CASE("trial summary") {
    std::vector<SlotMetrics> slots(4);
    slots[0].rate_bps = {6e6, 4e6};
    slots[1].rate_bps = {6e6, 6e6};
    slots[2].rate_bps = {1e6, 9e6};
    slots[3].rate_bps = {5e6, 5e6};
    for (auto& s : slots) s.min_rate_bps = std::min(s.rate_bps[0], s.rate_bps[1]);
    slots[2].urllc_error = true;
    const auto t = summarize_trial(slots, 5e6);
    CHECK(t.slots == 4);
    CHECK(t.mean_min_rate_bps == doctest::Approx((4e6 + 6e6 + 1e6 + 5e6) / 4));
    CHECK(t.embb_reliability == 6.0 / 8.0);
    CHECK(t.urllc_outage == 0.25);
  }
}
