#include "nrpunct/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "nrpunct/errors.hpp"

namespace nrpunct {
namespace {

std::ostringstream number_stream() {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(6);
  return os;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("error while writing " + path.string());
}

constexpr SchedulerPolicy kSeriesOrder[] = {SchedulerPolicy::proposed, SchedulerPolicy::ps,
                                            SchedulerPolicy::rs, SchedulerPolicy::eds};

std::string regime_name(LossShape s, AntennaMode m) {
  return std::string(to_string(s)) + "_" + std::string(to_string(m));
}

std::string table(const SweepResult& sweep, LossShape shape, AntennaMode mode, bool reliability) {
  std::vector<SchedulerPolicy> policies;
  for (auto p : kSeriesOrder) {
    if (std::any_of(sweep.cells.begin(), sweep.cells.end(),
                    [p](const SweepCell& c) { return c.spec.policy == p; })) {
      policies.push_back(p);
    }
  }
  std::vector<double> lambdas;
  for (const auto& c : sweep.cells) lambdas.push_back(c.spec.lambda);
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  if (policies.empty() || lambdas.empty()) {
    throw ConfigError("sweep has no cells for regime " + regime_name(shape, mode));
  }

  auto os = number_stream();
  os << "lambda";
  for (auto p : policies) os << ',' << to_string(p);
  os << '\n';
  for (double l : lambdas) {
    os << l;
    for (auto p : policies) {
      const SweepCell* c = sweep.find(p, shape, mode, l);
      if (c == nullptr) {
        throw ConfigError("sweep is missing cell " + CellSpec{p, shape, mode, l}.label());
      }
      os << ',' << (reliability ? c->embb_reliability : c->mean_min_rate_bps / 1e6);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

std::string format_csv(const SweepResult& sweep) {
  auto os = number_stream();
  os << kCsvHeader << '\n';
  for (const auto& c : sweep.cells) {
    os << to_string(c.spec.policy) << ',' << to_string(c.spec.shape) << ','
       << to_string(c.spec.mode) << ',' << c.spec.lambda << ',' << c.mean_min_rate_bps / 1e6
       << ',' << c.min_rate_stderr_bps / 1e6 << ',' << c.embb_reliability << ','
       << c.urllc_outage << ',' << c.trials << ',' << sweep.seed << '\n';
  }
  return os.str();
}

void emit_csv(const SweepResult& sweep, const std::filesystem::path& path) {
  write_file(path, format_csv(sweep));
}

Figure figure_from_string(const std::string& name) {
  if (name == "fig3") return Figure::fig3;
  if (name == "fig4") return Figure::fig4;
  throw ConfigError("unknown figure '" + name + "' (expected fig3 or fig4)");
}

std::vector<std::filesystem::path> emit_plotdata(const SweepResult& sweep, Figure figure,
                                                 const std::filesystem::path& dir) {
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  if (figure == Figure::fig3) {
    for (auto s : {LossShape::linear, LossShape::convex_quadratic}) {
      for (auto m : {AntennaMode::siso, AntennaMode::miso}) {
        files.emplace_back(dir / ("fig3_" + regime_name(s, m) + ".csv"),
                           table(sweep, s, m, false));
      }
    }
  } else {
    files.emplace_back(dir / "fig4_convex_miso.csv",
                       table(sweep, LossShape::convex_quadratic, AntennaMode::miso, true));
  }
  // All tables are built before anything is written, so a missing cell leaves
  // no partial output behind.
  std::vector<std::filesystem::path> written;
  for (const auto& [path, text] : files) {
    write_file(path, text);
    written.push_back(path);
  }
  return written;
}

}  // namespace nrpunct
