#include "leortc/harness/scenario.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "leortc/common/error.h"
#include "leortc/common/rng.h"
#include "leortc/orbital/tle.h"

namespace leortc {
namespace harness {

const std::array<NamedCity, 20> kCityPool = {{
    {"new_york", 40.71, -74.01},
    {"los_angeles", 34.05, -118.24},
    {"london", 51.51, -0.13},
    {"paris", 48.86, 2.35},
    {"berlin", 52.52, 13.40},
    {"madrid", 40.42, -3.70},
    {"rome", 41.90, 12.50},
    {"istanbul", 41.01, 28.98},
    {"moscow", 55.76, 37.62},
    {"dubai", 25.20, 55.27},
    {"mumbai", 19.08, 72.88},
    {"singapore", 1.35, 103.82},
    {"tokyo", 35.68, 139.69},
    {"seoul", 37.57, 126.98},
    {"beijing", 39.90, 116.41},
    {"sydney", -33.87, 151.21},
    {"sao_paulo", -23.55, -46.63},
    {"buenos_aires", -34.60, -58.38},
    {"mexico_city", 19.43, -99.13},
    {"cairo", 30.04, 31.24},
}};

namespace {

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// maneuver = ids:3,17;dalt:25;draan:0.5;dma:4;at:120
orbital::ManeuverSpec ParseManeuver(const std::string& value, int line_no) {
  orbital::ManeuverSpec spec;
  std::istringstream in(value);
  std::string part;
  while (std::getline(in, part, ';')) {
    size_t colon = part.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kBadConfig,
                  "line " + std::to_string(line_no) +
                      ": maneuver field needs key:value, got '" + part + "'");
    }
    std::string key = Trim(part.substr(0, colon));
    std::string val = Trim(part.substr(colon + 1));
    if (key == "ids") {
      std::istringstream ids(val);
      std::string id;
      while (std::getline(ids, id, ',')) {
        spec.target_sat_ids.push_back(std::stoi(id));
      }
    } else if (key == "dalt") {
      spec.delta_altitude_km = std::stod(val);
    } else if (key == "draan") {
      spec.delta_raan_deg = std::stod(val);
    } else if (key == "dma") {
      spec.delta_mean_anomaly_deg = std::stod(val);
    } else if (key == "at") {
      spec.apply_time_s = std::stod(val);
    } else {
      throw Error(ErrorCode::kBadConfig,
                  "line " + std::to_string(line_no) +
                      ": unknown maneuver field '" + key + "'");
    }
  }
  return spec;
}

}  // namespace

ScenarioConfig LoadScenarioConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open config file " + path);
  }
  ScenarioConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    size_t eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kBadConfig,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = Trim(trimmed.substr(0, eq));
    std::string value = Trim(trimmed.substr(eq + 1));
    try {
      if (key == "name") config.name = value;
      else if (key == "planes") config.planes = std::stoi(value);
      else if (key == "sats_per_plane") config.sats_per_plane = std::stoi(value);
      else if (key == "altitude_km") config.altitude_km = std::stod(value);
      else if (key == "inclination_deg") config.inclination_deg = std::stod(value);
      else if (key == "tle_file") config.tle_file = value;
      else if (key == "min_elevation_deg") config.min_elevation_deg = std::stod(value);
      else if (key == "hysteresis_ms") config.hysteresis_ms = std::stod(value);
      else if (key == "isl_hop_delay_ms") config.isl_hop_delay_ms = std::stod(value);
      else if (key == "call_duration_s") config.call_duration_s = std::stoi(value);
      else if (key == "calls") config.calls = std::stoi(value);
      else if (key == "seed") config.seed = std::stoull(value);
      else if (key == "access_capacity_mbps") config.link.access_capacity_mbps = std::stod(value);
      else if (key == "capacity_jitter_frac") config.link.capacity_jitter_frac = std::stod(value);
      else if (key == "loss_rate") config.link.loss_rate = std::stod(value);
      else if (key == "handover_outage_ms") config.link.handover_outage_ms = std::stod(value);
      else if (key == "isl_capacity_gbps") config.link.isl_capacity_gbps = std::stod(value);
      else if (key == "playout_deadline_ms") config.rtc.playout_deadline_ms = std::stod(value);
      else if (key == "bottleneck_buffer_ms") config.rtc.bottleneck_buffer_ms = std::stod(value);
      else if (key == "maneuver_count") config.auto_maneuver_count = std::stoi(value);
      else if (key == "maneuver_max_dalt_km") config.auto_maneuver_max_dalt_km = std::stod(value);
      else if (key == "maneuver_max_dma_deg") config.auto_maneuver_max_dma_deg = std::stod(value);
      else if (key == "maneuver_max_draan_deg") config.auto_maneuver_max_draan_deg = std::stod(value);
      else if (key == "maneuver") config.maneuvers.push_back(ParseManeuver(value, line_no));
      else {
        throw Error(ErrorCode::kBadConfig, "line " + std::to_string(line_no) +
                                               ": unknown key '" + key + "'");
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kBadConfig,
                  "line " + std::to_string(line_no) + ": bad value for '" +
                      key + "': " + e.what());
    }
  }
  if (config.call_duration_s < 120 || config.call_duration_s % 120 != 0) {
    throw Error(ErrorCode::kBadConfig,
                "call_duration_s must be a positive multiple of 120");
  }
  return config;
}

orbital::Constellation BuildConstellation(const ScenarioConfig& config) {
  if (!config.tle_file.empty()) {
    std::ifstream in(config.tle_file);
    if (!in) {
      throw Error(ErrorCode::kIoError,
                  "cannot open TLE file " + config.tle_file);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    orbital::TleParseResult parsed = orbital::ParseTle(buffer.str());
    orbital::Constellation c;
    c.planes = 1;
    c.sats_per_plane = static_cast<int>(parsed.entries.size());
    for (size_t i = 0; i < parsed.entries.size(); ++i) {
      orbital::Satellite sat;
      sat.id = static_cast<int>(i);
      sat.elements = parsed.entries[i].second;
      c.satellites.push_back(sat);
    }
    return c;
  }
  return orbital::SynthesizeWalker(config.planes, config.sats_per_plane,
                                   config.altitude_km, config.inclination_deg,
                                   config.seed);
}

CallEnvironment BuildCallEnvironment(const ScenarioConfig& config,
                                     const orbital::Constellation& base,
                                     int call_id) {
  CallEnvironment env;
  env.call_id = call_id;

  Rng rng(DeriveSeed(config.seed, 0xca11, call_id));
  env.src_city = static_cast<int>(rng.NextIndex(kCityPool.size()));
  env.dst_city = static_cast<int>(rng.NextIndex(kCityPool.size() - 1));
  if (env.dst_city >= env.src_city) ++env.dst_city;

  double period = orbital::OrbitPeriodS(orbital::kEarthRadiusKm +
                                        config.altitude_km);
  env.start_time_s = rng.NextDouble(0.0, period);

  orbital::GroundTerminal src{kCityPool[env.src_city].latitude_deg,
                              kCityPool[env.src_city].longitude_deg,
                              config.min_elevation_deg};
  orbital::GroundTerminal dst{kCityPool[env.dst_city].latitude_deg,
                              kCityPool[env.dst_city].longitude_deg,
                              config.min_elevation_deg};

  // Layer configured maneuvers (times relative to call start) and the
  // per-call randomized ones.
  std::vector<orbital::ManeuverSpec> specs;
  for (orbital::ManeuverSpec spec : config.maneuvers) {
    spec.apply_time_s += env.start_time_s;
    specs.push_back(spec);
  }
  for (int m = 0; m < config.auto_maneuver_count; ++m) {
    orbital::ManeuverSpec spec;
    spec.target_sat_ids.push_back(
        static_cast<int>(rng.NextIndex(base.satellites.size())));
    spec.delta_altitude_km = rng.NextDouble(-config.auto_maneuver_max_dalt_km,
                                            config.auto_maneuver_max_dalt_km);
    spec.delta_mean_anomaly_deg = rng.NextDouble(
        -config.auto_maneuver_max_dma_deg, config.auto_maneuver_max_dma_deg);
    spec.delta_raan_deg = rng.NextDouble(-config.auto_maneuver_max_draan_deg,
                                         config.auto_maneuver_max_draan_deg);
    spec.apply_time_s =
        env.start_time_s + rng.NextDouble(30.0, config.call_duration_s - 30.0);
    specs.push_back(spec);
  }
  orbital::Constellation constellation =
      specs.empty() ? base : orbital::ApplyManeuvers(base, specs);

  orbital::ScheduleParams params;
  params.hysteresis_ms = config.hysteresis_ms;
  params.isl_hop_delay_ms = config.isl_hop_delay_ms;
  params.start_time_s = env.start_time_s;
  env.schedule = orbital::BuildServingSchedule(
      constellation, src, dst, config.call_duration_s, params);
  env.trace = netsim::BuildLinkTrace(env.schedule, config.link,
                                     DeriveSeed(config.seed, 0x7ace, call_id));
  return env;
}

}  // namespace harness
}  // namespace leortc
