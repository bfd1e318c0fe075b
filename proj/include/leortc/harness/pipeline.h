#ifndef LEORTC_HARNESS_PIPELINE_H_
#define LEORTC_HARNESS_PIPELINE_H_

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "leortc/harness/scenario.h"
#include "leortc/policy/dataset.h"
#include "leortc/rtc/call_sim.h"

namespace leortc {
namespace harness {

struct CollectResult {
  std::vector<policy::DatasetRow> rows;
  int calls_completed = 0;
  int calls_failed = 0;
};

// Runs n calls under the random queue policy and emits one dataset row per
// segment. Failed calls are logged and skipped. Calls run in parallel
// workers; rows keep (call_id, segment_index) order.
CollectResult Collect(const ScenarioConfig& config, int n_calls,
                      int threads = 2);

using PolicyFactory =
    std::function<std::unique_ptr<rtc::QueuePolicy>(uint64_t call_seed)>;

struct Arm {
  std::string name;
  PolicyFactory make_policy;
};

struct MetricAggregate {
  double mean = 0.0;
  double median = 0.0;
  double p10 = 0.0;
  double p90 = 0.0;
};

struct ArmResult {
  std::string name;
  std::vector<rtc::CallMetrics> calls;
  MetricAggregate bitrate_mbps, freeze_per_min, e2e_delay_ms, loss_frac;
  std::map<int, int> action_histogram;  // queue limit -> segment count
};

struct EvalReport {
  std::string scenario;
  std::vector<ArmResult> arms;
  std::vector<double> inter_handover_gaps_s;
  int calls_failed = 0;

  const ArmResult& arm(const std::string& name) const;
};

// Paired A/B evaluation: every arm replays the same call environments
// (identical seeds, city pairs, traces).
EvalReport Evaluate(const ScenarioConfig& config, const std::vector<Arm>& arms,
                    int n_calls, int threads = 2);

struct HandoverStats {
  std::vector<int> handovers_per_call;
  std::vector<double> inter_handover_gaps_s;
  double mean_coverage_frac = 0.0;
  double calls_with_0_or_1_frac = 0.0;
  int max_handovers = 0;
};

// Schedule-level statistics without running the RTC stack.
HandoverStats ComputeHandoverStats(const ScenarioConfig& config, int n_calls,
                                   int threads = 2);

void WriteCallsCsv(const EvalReport& report, std::ostream& out);
void WriteReportCsv(const EvalReport& report, std::ostream& out);
void WriteSummary(const EvalReport& report, std::ostream& out);
// Histogram of inter-handover gaps (30 s bins).
void WriteHandoverHistogramCsv(const std::vector<double>& gaps_s,
                               std::ostream& out);

MetricAggregate Aggregate(std::vector<double> values);

}  // namespace harness
}  // namespace leortc

#endif  // LEORTC_HARNESS_PIPELINE_H_
