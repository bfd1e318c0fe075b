// Sweeps fixed queue limits across scenarios and prints per-arm metrics;
// used to pick link and RTC defaults.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "leortc/harness/pipeline.h"
#include "leortc/harness/policies.h"

using namespace leortc;

namespace {

harness::ScenarioConfig IdealScenario() {
  harness::ScenarioConfig c;
  c.name = "ideal";
  c.planes = 10;
  c.sats_per_plane = 8;
  c.altitude_km = 550.0;
  c.inclination_deg = 53.0;
  c.min_elevation_deg = 10.0;
  c.seed = 11;
  return c;
}

harness::ScenarioConfig DynamicScenario() {
  harness::ScenarioConfig c = IdealScenario();
  c.name = "dynamic";
  c.planes = 10;
  c.sats_per_plane = 10;
  c.auto_maneuver_count = 6;
  c.seed = 12;
  return c;
}

void RunSweep(const harness::ScenarioConfig& config, int calls, int threads) {
  std::vector<int> limits = {100, 300, 500, 600, 900, 1400, 2000};
  std::vector<harness::Arm> arms;
  for (int limit : limits) {
    arms.push_back({std::to_string(limit) + "ms", [limit](uint64_t) {
                      return std::make_unique<rtc::FixedQueuePolicy>(limit);
                    }});
  }
  harness::EvalReport report = harness::Evaluate(config, arms, calls, threads);

  std::printf("=== scenario %s (%d calls, failed %d) ===\n",
              config.name.c_str(), calls, report.calls_failed);
  std::printf("%8s %12s %12s %12s %10s\n", "limit", "bitrate", "freeze/min",
              "delay_ms", "loss%");
  for (const harness::ArmResult& arm : report.arms) {
    std::printf("%8s %12.3f %12.2f %12.1f %10.2f\n", arm.name.c_str(),
                arm.bitrate_mbps.mean, arm.freeze_per_min.mean,
                arm.e2e_delay_ms.mean, arm.loss_frac.mean * 100.0);
  }
}

}  // namespace

int main(int argc, char** argv) {
  int calls = argc > 1 ? std::atoi(argv[1]) : 12;
  int threads = argc > 2 ? std::atoi(argv[2]) : 2;

  for (const auto& config : {IdealScenario(), DynamicScenario()}) {
    harness::HandoverStats stats =
        harness::ComputeHandoverStats(config, calls, threads);
    std::printf(
        "scenario %s: coverage %.3f, calls with 0-1 handovers %.2f, max %d\n",
        config.name.c_str(), stats.mean_coverage_frac,
        stats.calls_with_0_or_1_frac, stats.max_handovers);
    RunSweep(config, calls, threads);
    std::printf("\n");
  }
  return 0;
}
