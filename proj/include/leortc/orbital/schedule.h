#ifndef LEORTC_ORBITAL_SCHEDULE_H_
#define LEORTC_ORBITAL_SCHEDULE_H_

#include <cstdint>
#include <vector>

#include "leortc/orbital/elements.h"
#include "leortc/orbital/geometry.h"

namespace leortc {
namespace orbital {

// Per-second serving-satellite and end-to-end delay series for one call.
// serving_sat_id is the source-side serving satellite; -1 marks seconds
// with no visible satellite on either end.
struct ServingSchedule {
  int duration_s = 0;
  std::vector<int> serving_sat_id;
  std::vector<double> delay_ms;

  int Handovers() const;
  // Seconds at which the serving id changes between two valid ids.
  std::vector<int> HandoverSeconds() const;
};

// Walker-delta style shell: planes spaced 360/planes in RAAN, slots spaced
// 360/sats_per_plane in mean anomaly, with an inter-plane phasing offset of
// 360/(planes*sats_per_plane). Satellite ids are dense, plane-major.
Constellation SynthesizeWalker(int planes, int sats_per_plane,
                               double altitude_km, double inclination_deg,
                               uint64_t seed);

// Returns a copy of the constellation with each maneuver's deltas layered
// onto the targeted satellites from its apply time onward. Later maneuvers
// stack on earlier ones.
Constellation ApplyManeuvers(const Constellation& constellation,
                             const std::vector<ManeuverSpec>& specs);

// Manhattan hop count between two satellites on the grid+ torus.
int GridHops(const Constellation& constellation, int sat_a, int sat_b);

struct ScheduleParams {
  double hysteresis_ms = 0.0;
  double isl_hop_delay_ms = 7.0;
  // Absolute simulation time of schedule second 0; lets calls start at
  // arbitrary constellation phases.
  double start_time_s = 0.0;
};

// Delay-based serving selection: per second each terminal attaches to the
// visible satellite with minimum propagation delay; with nonzero hysteresis
// the incumbent is kept until a candidate beats it by more than the
// hysteresis. End-to-end delay = src access + grid+ ISL transit + dst
// access.
ServingSchedule BuildServingSchedule(const Constellation& constellation,
                                     const GroundTerminal& src,
                                     const GroundTerminal& dst, int duration_s,
                                     const ScheduleParams& params = {});

}  // namespace orbital
}  // namespace leortc

#endif  // LEORTC_ORBITAL_SCHEDULE_H_
