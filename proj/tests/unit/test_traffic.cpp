#include <doctest.h>

#include <cmath>

#include "nrpunct/traffic.hpp"

using namespace nrpunct;

TEST_SUITE("traffic") {
  TEST_CASE("no traffic") {
    RandomStream s(1);
    const auto a = sample_arrivals(s, 0.0, 7, 103);
    CHECK(a.total == 0);
    CHECK(a.per_minislot == std::vector<int>(7, 0));
    CHECK(a.packet_size_bytes == 50);
  }

  TEST_CASE("mean demand per slot") {
    RandomStream s(2);
    double sum = 0.0;
    const int n = 100000;
    for (int t = 0; t < n; ++t) sum += sample_arrivals(s, 40.0, 7, 103).total;
    CHECK(std::abs(sum / n - 40.0) <= 0.5);
  }

  TEST_CASE("demand is capped at the grid capacity") {
    RandomStream s(3);
    const auto a = sample_arrivals(s, 1e6, 7, 103);
    CHECK(a.total == 721);
    for (double lambda : {500.0, 720.0, 721.0, 800.0, 5000.0, 1e9}) {
      for (int t = 0; t < 50; ++t) {
        const auto b = sample_arrivals(s, lambda, 7, 103);
        int sum = 0;
        for (int dm : b.per_minislot) {
          CHECK(dm >= 0);
          sum += dm;
        }
        CHECK(sum == b.total);
        CHECK(b.total <= 721);
      }
    }
  }

  TEST_CASE("stream position does not depend on the load") {
    RandomStream a(4);
    RandomStream b(4);
    (void)sample_arrivals(a, 20.0, 7, 103);
    (void)sample_arrivals(b, 30.0, 7, 103);
    CHECK(a.uniform() == b.uniform());
  }
}
