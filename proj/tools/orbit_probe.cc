// Scans constellation geometry choices and reports coverage and handover
// statistics; used to pick scenario defaults.

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "leortc/harness/pipeline.h"

using namespace leortc;

int main(int argc, char** argv) {
  int calls = argc > 1 ? std::atoi(argv[1]) : 30;

  struct Probe {
    int planes, spp;
    double altitude, mask, inclination;
    int maneuvers;
    double hysteresis;
  };
  std::vector<Probe> probes = {
      {10, 8, 1200, 20, 70, 0, 2},  {10, 8, 1400, 20, 70, 0, 2},
      {10, 8, 1800, 20, 70, 0, 2},  {10, 8, 1200, 20, 53, 0, 2},
      {10, 8, 1400, 20, 53, 0, 2},  {10, 8, 1200, 20, 70, 0, 3},
      {10, 10, 1200, 20, 70, 6, 2}, {10, 10, 1400, 20, 70, 6, 2},
      {10, 10, 1800, 20, 70, 6, 2}, {10, 10, 1200, 20, 53, 6, 2},
      {10, 10, 1200, 20, 70, 10, 2},
  };

  std::printf("%6s %4s %6s %5s %4s %4s %4s | %8s %6s %6s %6s\n", "planes",
              "spp", "alt", "mask", "inc", "man", "hys", "coverage", "f01",
              "max", "gaps");
  for (const Probe& p : probes) {
    harness::ScenarioConfig c;
    c.planes = p.planes;
    c.sats_per_plane = p.spp;
    c.altitude_km = p.altitude;
    c.min_elevation_deg = p.mask;
    c.inclination_deg = p.inclination;
    c.auto_maneuver_count = p.maneuvers;
    c.hysteresis_ms = p.hysteresis;
    c.seed = 33;
    harness::HandoverStats s = harness::ComputeHandoverStats(c, calls, 2);
    double mean_gap = 0.0;
    for (double g : s.inter_handover_gaps_s) mean_gap += g;
    if (!s.inter_handover_gaps_s.empty()) {
      mean_gap /= s.inter_handover_gaps_s.size();
    }
    std::printf("%6d %4d %6.0f %5.0f %4.0f %4d %4.0f | %8.3f %6.2f %6d %6.0f\n",
                p.planes, p.spp, p.altitude, p.mask, p.inclination,
                p.maneuvers, p.hysteresis, s.mean_coverage_frac,
                s.calls_with_0_or_1_frac, s.max_handovers, mean_gap);
  }
  return 0;
}
