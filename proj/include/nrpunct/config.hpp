#pragma once

#include <string>
#include <string_view>

#include "nrpunct/engine.hpp"

namespace nrpunct {

/// Reads a YAML mapping whose keys mirror SimConfig fields. Keys that are not
/// present keep their defaults; unknown keys, malformed syntax and invalid
/// values raise ConfigError with "<source>:<line>:" context.
///
/// Keys: numerology, total_bandwidth_khz, guard_band_khz, frame_slots, frames,
/// embb_users, urllc_users, miso_antennas, cell_radius_m, min_distance_m,
/// pathloss_exponent, reference_loss_db, reference_distance_m,
/// noise_psd_dbm_hz, p_max_dbm, r_min_mbps, theta_max, packet_size_bytes,
/// offset_khz, policies, loss_shapes, antenna_modes, lambdas, trials, seed,
/// threads.
SimConfig parse_config(const std::string& path);
SimConfig parse_config_string(std::string_view text, const std::string& source = "<string>");

/// YAML text that parse_config_string() maps back to an equal SimConfig.
std::string emit_config(const SimConfig& cfg);

}  // namespace nrpunct
