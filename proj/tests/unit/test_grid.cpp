#include <doctest.h>

#include "nrpunct/errors.hpp"
#include "nrpunct/grid.hpp"

using namespace nrpunct;

TEST_SUITE("grid") {
  TEST_CASE("default 20 MHz grid") {
    const auto g = build_grid(0, 20000.0, 692.5, 10);
    CHECK(g.rb_count == 103);
    CHECK(g.minislots() == 7);
    CHECK(g.frame_slots == 10);
    CHECK(g.capacity_units() == 721);
    CHECK(g.numerology.slot_duration_ms == 1.0);
    CHECK(g.numerology.minislot_duration_ms() == 1.0 / 7.0);
    CHECK(g.numerology.symbols_per_minislot * g.minislots() == Numerology::kSymbolsPerSlot);
    CHECK(g.rb_bandwidth_khz() ==
          g.numerology.subcarrier_spacing_khz * Numerology::kSubcarriersPerRb);
  }

  TEST_CASE("exactly one RB fits") { CHECK(build_grid(0, 180.0, 0.0, 1).rb_count == 1); }

  TEST_CASE("10 MHz grid") {
    // (10000 - 2 * 692.5) / 180 = 47.86
    CHECK(build_grid(0, 10000.0, 692.5, 10).rb_count == 47);
  }

  TEST_CASE("pure function") {
    const auto a = build_grid(0, 15000.0, 500.0, 4);
    const auto b = build_grid(0, 15000.0, 500.0, 4);
    CHECK(a.rb_count == b.rb_count);
    CHECK(a.total_bandwidth_khz == b.total_bandwidth_khz);
  }

  TEST_CASE("rejects invalid grids") {
    CHECK_THROWS_AS(build_grid(1, 20000.0, 692.5, 10), ConfigError);
    CHECK_THROWS_AS(build_grid(0, 100.0, 0.0, 10), ConfigError);
    CHECK_THROWS_AS(build_grid(0, 20000.0, -1.0, 10), ConfigError);
    CHECK_THROWS_AS(build_grid(0, 20000.0, 692.5, 0), ConfigError);
  }

  TEST_CASE("round-robin allocation counts") {
    const auto g = build_grid(0, 20000.0, 692.5, 10);
    const auto a = initial_allocation(g, 5);
    CHECK(a.rb_count_of(0) == 21);
    CHECK(a.rb_count_of(1) == 21);
    CHECK(a.rb_count_of(2) == 21);
    CHECK(a.rb_count_of(3) == 20);
    CHECK(a.rb_count_of(4) == 20);
    CHECK(a.allocated_rb_count() == 103);

    const auto one = initial_allocation(g, 1);
    CHECK(one.rb_count_of(0) == 103);

    const auto g4 = build_grid(0, 720.0, 0.0, 1);
    REQUIRE(g4.rb_count == 4);
    const auto four = initial_allocation(g4, 4);
    for (int k = 0; k < 4; ++k) CHECK(four.rb_count_of(k) == 1);
  }

  TEST_CASE("column exclusivity") {
    const auto g = build_grid(0, 20000.0, 692.5, 10);
    const auto a = initial_allocation(g, 7);
    for (int b = 0; b < a.rb_count(); ++b) {
      int owners = 0;
      for (int k = 0; k < a.users(); ++k) owners += a.x(k, b);
      CHECK(owners <= 1);
    }
  }

  TEST_CASE("more users than RBs") {
    const auto g = build_grid(0, 20000.0, 692.5, 10);
    try {
      (void)initial_allocation(g, 200);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("K <= B") != std::string::npos);
    }
    CHECK_THROWS_AS(initial_allocation(g, 0), ConfigError);
  }

  TEST_CASE("allocation matrix validation") {
    CHECK_THROWS(AllocationMatrix(2, {0, 2}));
    const AllocationMatrix a(2, {1, kUnallocated, 0});
    CHECK(a.allocated_rb_count() == 2);
    CHECK(a.rbs_of(1) == std::vector<int>{0});
    CHECK(a.x(0, 1) == 0);
  }
}
