#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nrpunct/errors.hpp"
#include "nrpunct/report.hpp"

using namespace nrpunct;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

SweepResult synthetic(const std::vector<AntennaMode>& modes, const std::vector<double>& lambdas) {
  SweepResult s;
  s.seed = 42;
  for (auto p : {SchedulerPolicy::eds, SchedulerPolicy::proposed, SchedulerPolicy::rs,
                 SchedulerPolicy::ps}) {
    for (auto sh : {LossShape::linear, LossShape::convex_quadratic}) {
      for (auto m : modes) {
        for (double l : lambdas) {
          SweepCell c;
          c.spec = CellSpec{p, sh, m, l};
          c.mean_min_rate_bps = 1e6 * (10.0 + static_cast<int>(p)) + l;
          c.embb_reliability = 0.5 + 0.01 * static_cast<int>(p);
          c.trials = 3;
          s.cells.push_back(c);
        }
      }
    }
  }
  return s;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "nrpunct_report_test") {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("empty sweep is header only") {
    CHECK(format_csv(SweepResult{}) == std::string(kCsvHeader) + "\n");
  }

  TEST_CASE("one row per cell with six significant digits") {
    SweepResult s;
    s.seed = 7;
    SweepCell c;
    c.spec = CellSpec{SchedulerPolicy::ps, LossShape::convex_quadratic, AntennaMode::miso, 40.0};
    c.mean_min_rate_bps = 5123456.789;
    c.min_rate_stderr_bps = 12345.678;
    c.embb_reliability = 0.944356;
    c.urllc_outage = 1.0;
    c.trials = 500;
    s.cells.push_back(c);
    const auto l = lines(format_csv(s));
    REQUIRE(l.size() == 2);
    CHECK(l[0] == kCsvHeader);
    CHECK(l[1] == "ps,convex,miso,40,5.12346,0.0123457,0.944356,1,500,7");
  }

  TEST_CASE("files are byte-identical on re-emission") {
    TempDir dir;
    const auto s = synthetic({AntennaMode::siso, AntennaMode::miso}, {10, 40});
    emit_csv(s, dir.path / "a.csv");
    emit_csv(s, dir.path / "b.csv");
    CHECK(slurp(dir.path / "a.csv") == slurp(dir.path / "b.csv"));
    CHECK(lines(slurp(dir.path / "a.csv")).size() == s.cells.size() + 1);
  }

  TEST_CASE("unwritable path") {
    CHECK_THROWS(emit_csv(SweepResult{}, "/nonexistent/dir/out.csv"));
  }

  TEST_CASE("fig3 writes one table per regime") {
    TempDir dir;
    const auto s = synthetic({AntennaMode::siso, AntennaMode::miso}, {10, 40, 70});
    const auto files = emit_plotdata(s, Figure::fig3, dir.path);
    REQUIRE(files.size() == 4);
    for (const auto& f : files) {
      const auto l = lines(slurp(f));
      REQUIRE(l.size() == 4);
      CHECK(l[0] == "lambda,proposed,ps,rs,eds");
      CHECK(l[1].rfind("10,", 0) == 0);
    }
    CHECK(std::filesystem::exists(dir.path / "fig3_convex_miso.csv"));
    CHECK(lines(slurp(dir.path / "fig3_linear_siso.csv"))[2] == "40,10,11,12,13");
  }

  TEST_CASE("fig4 is convex MISO reliability") {
    TempDir dir;
    const auto s = synthetic({AntennaMode::miso}, {10, 70});
    const auto files = emit_plotdata(s, Figure::fig4, dir.path);
    REQUIRE(files.size() == 1);
    CHECK(files[0].filename() == "fig4_convex_miso.csv");
    const auto l = lines(slurp(files[0]));
    REQUIRE(l.size() == 3);
    CHECK(l[1] == "10,0.5,0.51,0.52,0.53");
  }

  TEST_CASE("missing regime is reported") {
    TempDir dir;
    const auto s = synthetic({AntennaMode::siso}, {10});
    try {
      (void)emit_plotdata(s, Figure::fig4, dir.path);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("antenna_mode=miso") != std::string::npos);
    }
    CHECK_THROWS_AS(emit_plotdata(s, Figure::fig3, dir.path), ConfigError);
    CHECK(std::filesystem::is_empty(dir.path));
  }

  TEST_CASE("figure names") {
    CHECK(figure_from_string("fig3") == Figure::fig3);
    CHECK_THROWS_AS(figure_from_string("fig9"), ConfigError);
  }
}
