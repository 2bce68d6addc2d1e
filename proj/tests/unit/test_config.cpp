#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "nrpunct/config.hpp"
#include "nrpunct/errors.hpp"

using namespace nrpunct;

namespace {

std::string error_of(const std::string& text) {
  try {
    (void)parse_config_string(text, "cfg.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("empty input gives defaults") {
    const auto c = parse_config_string("");
    CHECK(c == SimConfig{});
    CHECK(c.grid().rb_count == 103);
    CHECK(c.grid().minislots() == 7);
    CHECK(c.r_min_mbps == 5.0);
    CHECK(parse_config_string("# only a comment\n") == SimConfig{});
  }

  TEST_CASE("overrides") {
    const auto c = parse_config_string(
        "lambdas: [10, 40, 70]\n"
        "policies: [ps, proposed]\n"
        "loss_shapes: convex\n"
        "antenna_modes: [miso]\n"
        "trials: 12\n"
        "seed: 18446744073709551615\n"
        "reference_loss_db: 30\n");
    CHECK(c.lambdas == std::vector<double>{10, 40, 70});
    CHECK(c.policies == std::vector<SchedulerPolicy>{SchedulerPolicy::ps, SchedulerPolicy::proposed});
    CHECK(c.loss_shapes == std::vector<LossShape>{LossShape::convex_quadratic});
    CHECK(c.antenna_modes == std::vector<AntennaMode>{AntennaMode::miso});
    CHECK(c.trials == 12);
    CHECK(c.seed == 18446744073709551615ULL);
    CHECK(c.pathloss.reference_loss_db == 30.0);
    CHECK(c.embb_users == 5);
  }

  TEST_CASE("lambda override reaches the sweep") {
    auto c = parse_config_string(
        "lambdas: [5, 15]\npolicies: [eds]\nloss_shapes: [linear]\nantenna_modes: [siso]\n"
        "trials: 2\nframe_slots: 2\n");
    const auto s = run_sweep(c);
    REQUIRE(s.cells.size() == 2);
    CHECK(s.cells[0].spec.lambda == 5.0);
    CHECK(s.cells[1].spec.lambda == 15.0);
  }

  TEST_CASE("too many users names the K <= B rule") {
    const auto e = error_of("embb_users: 200\n");
    CHECK(contains(e, "K <= B"));
    CHECK(contains(e, "cfg.yaml"));
  }

  TEST_CASE("unknown keys carry line context") {
    const auto e = error_of("trials: 3\nbogus_key: 1\n");
    CHECK(contains(e, "cfg.yaml:2:"));
    CHECK(contains(e, "bogus_key"));
  }

  TEST_CASE("negative lambda") {
    const auto e = error_of("trials: 3\nlambdas:\n  - 10\n  - -4\n");
    CHECK(contains(e, "cfg.yaml:4:"));
    CHECK(contains(e, "lambda"));
  }

  TEST_CASE("malformed syntax and bad values") {
    CHECK(contains(error_of("lambdas: [10, 20\n"), "malformed"));
    CHECK(contains(error_of("trials: many\n"), "cfg.yaml:1:"));
    CHECK(contains(error_of("policies: [proposed, magic]\n"), "magic"));
    CHECK(contains(error_of("- 1\n- 2\n"), "mapping"));
    CHECK(contains(error_of("lambdas: {a: 1}\n"), "list"));
  }

  TEST_CASE("missing file") {
    CHECK_THROWS_AS(parse_config("/nonexistent/dir/none.yaml"), ConfigError);
  }

  TEST_CASE("reads files") {
    const auto path = std::filesystem::temp_directory_path() / "nrpunct_cfg_test.yaml";
    {
      std::ofstream out(path);
      out << "trials: 9\n";
    }
    CHECK(parse_config(path.string()).trials == 9);
    std::filesystem::remove(path);
  }

  TEST_CASE("emit then parse reproduces the configuration") {
    const SimConfig d;
    CHECK(parse_config_string(emit_config(d)) == d);
    SimConfig c;
    c.lambdas = {0.1, 33.3, 1e-7};
    c.guard_band_khz = 1.0 / 3.0;
    c.theta_max = 1e-9;
    c.policies = {SchedulerPolicy::eds};
    c.seed = 123456789012345ULL;
    c.threads = 2;
    CHECK(parse_config_string(emit_config(c)) == c);
  }
}
