#ifndef LEORTC_HARNESS_SCENARIO_H_
#define LEORTC_HARNESS_SCENARIO_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "leortc/netsim/link_trace.h"
#include "leortc/orbital/schedule.h"
#include "leortc/rtc/call_sim.h"

namespace leortc {
namespace harness {

struct NamedCity {
  const char* name;
  double latitude_deg;
  double longitude_deg;
};

// Fixed pool of major cities; call endpoints are seeded samples from it.
extern const std::array<NamedCity, 20> kCityPool;

struct ScenarioConfig {
  std::string name = "ideal";

  // Constellation. A TLE file overrides the synthesized Walker shell.
  int planes = 10;
  int sats_per_plane = 8;
  double altitude_km = 550.0;
  double inclination_deg = 53.0;
  std::string tle_file;

  double min_elevation_deg = 25.0;
  double hysteresis_ms = 0.0;
  double isl_hop_delay_ms = 7.0;

  int call_duration_s = 480;
  int calls = 100;
  uint64_t seed = 1;

  netsim::LinkParams link;
  rtc::RtcConfig rtc;

  // Explicit maneuvers (apply times relative to call start) plus optional
  // per-call randomized maneuvers for dynamic scenarios.
  std::vector<orbital::ManeuverSpec> maneuvers;
  int auto_maneuver_count = 0;
  double auto_maneuver_max_dalt_km = 30.0;
  double auto_maneuver_max_dma_deg = 8.0;
  double auto_maneuver_max_draan_deg = 1.0;

  int segments_per_call() const {
    return call_duration_s / rtc.segment_duration_s;
  }
};

// Parses a flat key = value scenario file (# comments, repeatable
// `maneuver =` entries). Unknown keys raise Error(kBadConfig).
ScenarioConfig LoadScenarioConfig(const std::string& path);

// The scenario's base constellation (Walker shell or TLE file).
orbital::Constellation BuildConstellation(const ScenarioConfig& config);

// Everything deterministic about one call: endpoints, epoch offset,
// per-call maneuvers, schedule, trace.
struct CallEnvironment {
  int call_id = 0;
  int src_city = 0;
  int dst_city = 0;
  double start_time_s = 0.0;
  orbital::ServingSchedule schedule;
  netsim::LinkTrace trace;
};

CallEnvironment BuildCallEnvironment(const ScenarioConfig& config,
                                     const orbital::Constellation& base,
                                     int call_id);

}  // namespace harness
}  // namespace leortc

#endif  // LEORTC_HARNESS_SCENARIO_H_
