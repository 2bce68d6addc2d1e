#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nrpunct/engine.hpp"

namespace nrpunct {

/// Header of the sweep CSV, in column order.
inline constexpr const char* kCsvHeader =
    "policy,loss_shape,antenna_mode,lambda,mean_min_rate_mbps,min_rate_stderr,embb_reliability,"
    "urllc_outage,trials,seed";

/// One row per cell in sweep order, numbers with 6 significant digits. Rates
/// and their standard error are in Mbps.
std::string format_csv(const SweepResult& sweep);
void emit_csv(const SweepResult& sweep, const std::filesystem::path& path);

enum class Figure { fig3, fig4 };

Figure figure_from_string(const std::string& name);

/// Plot tables, one per file, columns lambda then one series per policy in
/// the order proposed, ps, rs, eds (policies absent from the sweep are
/// skipped).
///   fig3: mean min-rate in Mbps, files fig3_<shape>_<mode>.csv for the four
///         (loss shape, antenna mode) regimes.
///   fig4: eMBB reliability in the convex MISO regime, file fig4_convex_miso.csv.
/// Throws ConfigError naming the first missing cell. Returns written paths.
std::vector<std::filesystem::path> emit_plotdata(const SweepResult& sweep, Figure figure,
                                                 const std::filesystem::path& dir);

}  // namespace nrpunct
