#include "nrpunct/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "nrpunct/errors.hpp"

namespace nrpunct {
namespace {

std::string where(const std::string& source, const YAML::Mark& mark) {
  if (mark.line < 0) return source + ": ";
  return source + ":" + std::to_string(mark.line + 1) + ": ";
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key, const std::string& source) {
  if (!node.IsScalar()) throw ConfigError(where(source, node.Mark()) + key + " must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(where(source, node.Mark()) + "invalid value '" + node.Scalar() + "' for " +
                      key);
  }
}

template <typename T, typename Conv>
std::vector<T> sequence(const YAML::Node& node, const std::string& key, const std::string& source,
                        Conv conv) {
  std::vector<T> out;
  if (node.IsScalar()) {
    out.push_back(conv(node));
    return out;
  }
  if (!node.IsSequence()) throw ConfigError(where(source, node.Mark()) + key + " must be a list");
  for (const auto& item : node) out.push_back(conv(item));
  return out;
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

SimConfig parse_config_string(std::string_view text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(where(source, e.mark) + "malformed YAML: " + e.msg);
  }
  SimConfig cfg;
  if (root.IsNull()) {
    cfg.validate();
    return cfg;
  }
  if (!root.IsMap()) throw ConfigError(where(source, root.Mark()) + "top level must be a mapping");

  using Setter = std::function<void(const YAML::Node&, const std::string&)>;
  const auto num = [&](double& field) -> Setter {
    return [&field, &source](const YAML::Node& n, const std::string& k) {
      field = scalar<double>(n, k, source);
    };
  };
  const auto integer = [&](int& field) -> Setter {
    return [&field, &source](const YAML::Node& n, const std::string& k) {
      field = scalar<int>(n, k, source);
    };
  };
  const auto named = [&source](auto parse, const std::string& key) {
    return [parse, key, &source](const YAML::Node& item) {
      const std::string name = scalar<std::string>(item, key, source);
      try {
        return parse(name);
      } catch (const std::exception& e) {
        throw ConfigError(where(source, item.Mark()) + e.what());
      }
    };
  };

  const std::map<std::string, Setter> setters{
      {"numerology", integer(cfg.numerology)},
      {"total_bandwidth_khz", num(cfg.total_bandwidth_khz)},
      {"guard_band_khz", num(cfg.guard_band_khz)},
      {"frame_slots", integer(cfg.frame_slots)},
      {"frames", integer(cfg.frames)},
      {"embb_users", integer(cfg.embb_users)},
      {"urllc_users", integer(cfg.urllc_users)},
      {"miso_antennas", integer(cfg.miso_antennas)},
      {"cell_radius_m", num(cfg.cell_radius_m)},
      {"min_distance_m", num(cfg.min_distance_m)},
      {"pathloss_exponent", num(cfg.pathloss.exponent)},
      {"reference_loss_db", num(cfg.pathloss.reference_loss_db)},
      {"reference_distance_m", num(cfg.pathloss.reference_distance_m)},
      {"noise_psd_dbm_hz", num(cfg.noise_psd_dbm_hz)},
      {"p_max_dbm", num(cfg.p_max_dbm)},
      {"r_min_mbps", num(cfg.r_min_mbps)},
      {"theta_max", num(cfg.theta_max)},
      {"packet_size_bytes", integer(cfg.packet_size_bytes)},
      {"offset_khz", num(cfg.offset_khz)},
      {"trials", integer(cfg.trials)},
      {"threads", integer(cfg.threads)},
      {"seed",
       [&](const YAML::Node& n, const std::string& k) {
         cfg.seed = scalar<std::uint64_t>(n, k, source);
       }},
      {"lambdas",
       [&](const YAML::Node& n, const std::string& k) {
         cfg.lambdas = sequence<double>(n, k, source, [&](const YAML::Node& item) {
           const double v = scalar<double>(item, k, source);
           if (!(v >= 0.0)) {
             throw ConfigError(where(source, item.Mark()) + "lambda must be >= 0 (got " +
                               item.Scalar() + ")");
           }
           return v;
         });
       }},
      {"policies",
       [&](const YAML::Node& n, const std::string& k) {
         cfg.policies = sequence<SchedulerPolicy>(
             n, k, source, named([](const std::string& s) { return policy_from_string(s); }, k));
       }},
      {"loss_shapes",
       [&](const YAML::Node& n, const std::string& k) {
         cfg.loss_shapes = sequence<LossShape>(
             n, k, source,
             named([](const std::string& s) { return loss_shape_from_string(s); }, k));
       }},
      {"antenna_modes",
       [&](const YAML::Node& n, const std::string& k) {
         cfg.antenna_modes = sequence<AntennaMode>(
             n, k, source,
             named([](const std::string& s) { return antenna_mode_from_string(s); }, k));
       }},
  };

  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError(where(source, kv.first.Mark()) + "unknown key '" + key + "'");
    }
    it->second(kv.second, key);
  }

  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

SimConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open configuration file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str(), path);
}

std::string emit_config(const SimConfig& cfg) {
  std::ostringstream os;
  os << "numerology: " << cfg.numerology << '\n'
     << "total_bandwidth_khz: " << fmt(cfg.total_bandwidth_khz) << '\n'
     << "guard_band_khz: " << fmt(cfg.guard_band_khz) << '\n'
     << "frame_slots: " << cfg.frame_slots << '\n'
     << "frames: " << cfg.frames << '\n'
     << "embb_users: " << cfg.embb_users << '\n'
     << "urllc_users: " << cfg.urllc_users << '\n'
     << "miso_antennas: " << cfg.miso_antennas << '\n'
     << "cell_radius_m: " << fmt(cfg.cell_radius_m) << '\n'
     << "min_distance_m: " << fmt(cfg.min_distance_m) << '\n'
     << "pathloss_exponent: " << fmt(cfg.pathloss.exponent) << '\n'
     << "reference_loss_db: " << fmt(cfg.pathloss.reference_loss_db) << '\n'
     << "reference_distance_m: " << fmt(cfg.pathloss.reference_distance_m) << '\n'
     << "noise_psd_dbm_hz: " << fmt(cfg.noise_psd_dbm_hz) << '\n'
     << "p_max_dbm: " << fmt(cfg.p_max_dbm) << '\n'
     << "r_min_mbps: " << fmt(cfg.r_min_mbps) << '\n'
     << "theta_max: " << fmt(cfg.theta_max) << '\n'
     << "packet_size_bytes: " << cfg.packet_size_bytes << '\n'
     << "offset_khz: " << fmt(cfg.offset_khz) << '\n';
  const auto list = [&os](const char* key, const auto& items, auto str) {
    os << key << ": [";
    for (std::size_t i = 0; i < items.size(); ++i) os << (i ? ", " : "") << str(items[i]);
    os << "]\n";
  };
  list("policies", cfg.policies, [](SchedulerPolicy p) { return std::string(to_string(p)); });
  list("loss_shapes", cfg.loss_shapes, [](LossShape s) { return std::string(to_string(s)); });
  list("antenna_modes", cfg.antenna_modes,
       [](AntennaMode m) { return std::string(to_string(m)); });
  list("lambdas", cfg.lambdas, [](double l) { return fmt(l); });
  os << "trials: " << cfg.trials << '\n'
     << "seed: " << cfg.seed << '\n'
     << "threads: " << cfg.threads << '\n';
  return os.str();
}

}  // namespace nrpunct
