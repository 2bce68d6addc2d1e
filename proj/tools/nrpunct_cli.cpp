// Command-line front end: load a configuration, run the sweep, write results.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nrpunct/config.hpp"
#include "nrpunct/engine.hpp"
#include "nrpunct/errors.hpp"
#include "nrpunct/report.hpp"
#include "nrpunct/scheduler.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

std::vector<nrpunct::SchedulerPolicy> parse_policies(const std::string& list) {
  std::vector<nrpunct::SchedulerPolicy> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(nrpunct::policy_from_string(item));
  }
  if (out.empty()) throw nrpunct::ConfigError("--policies needs at least one policy");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eMBB/URLLC puncturing scheduler simulator"};
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
  std::string policies;
  std::string figure = "none";
  bool quiet = false;
  bool print_config = false;

  app.add_option("--config", config_path, "YAML configuration file");
  app.add_option("--out", out_dir, "Output directory for sweep.csv and plot data");
  app.add_option("--seed", seed, "Root seed");
  app.add_option("--trials", trials, "Trials per cell");
  app.add_option("--threads", threads, "Worker threads (0 = all hardware threads)");
  app.add_option("--policies", policies, "Comma-separated subset of proposed,ps,rs,eds");
  app.add_option("--figure", figure, "Plot data to emit")
      ->check(CLI::IsMember({"fig3", "fig4", "none"}));
  app.add_flag("--quiet", quiet, "Suppress the per-cell progress counter");
  app.add_flag("--print-config", print_config, "Print the effective configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  nrpunct::SimConfig cfg;
  try {
    if (!config_path.empty()) cfg = nrpunct::parse_config(config_path);
    if (seed) cfg.seed = *seed;
    if (trials) cfg.trials = *trials;
    if (threads) cfg.threads = *threads;
    if (!policies.empty()) cfg.policies = parse_policies(policies);
    cfg.validate();
  } catch (const nrpunct::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (print_config) {
    std::cout << nrpunct::emit_config(cfg);
    return 0;
  }

  try {
    std::filesystem::create_directories(out_dir);
    nrpunct::SweepOptions options;
    if (!quiet) {
      options.on_cell_done = [](int done, int total, const nrpunct::CellSpec& cell) {
        std::cerr << "[" << done << "/" << total << "] " << cell.label() << '\n';
      };
    }
    const nrpunct::SweepResult sweep = nrpunct::run_sweep(cfg, options);
    const std::filesystem::path csv = std::filesystem::path(out_dir) / "sweep.csv";
    nrpunct::emit_csv(sweep, csv);
    std::cout << csv.string() << '\n';
    if (figure != "none") {
      for (const auto& p :
           nrpunct::emit_plotdata(sweep, nrpunct::figure_from_string(figure), out_dir)) {
        std::cout << p.string() << '\n';
      }
    }
  } catch (const nrpunct::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nrpunct::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
