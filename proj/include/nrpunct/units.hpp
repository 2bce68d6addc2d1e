#pragma once

#include <cmath>

namespace nrpunct {

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double khz_to_hz(double khz) { return khz * 1e3; }

/// Thermal noise over `bandwidth_khz` for a noise PSD given in dBm/Hz.
inline double thermal_noise_watts(double bandwidth_khz, double psd_dbm_per_hz = -174.0) {
  return dbm_to_watts(psd_dbm_per_hz + 10.0 * std::log10(khz_to_hz(bandwidth_khz)));
}

}  // namespace nrpunct
