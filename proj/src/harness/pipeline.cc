#include "leortc/harness/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include "leortc/common/error.h"
#include "leortc/harness/policies.h"
#include "leortc/policy/state.h"

namespace leortc {
namespace harness {

namespace {

// Runs fn(call_id) for call ids [0, n) across workers.
void ParallelCalls(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

uint64_t CallSeed(const ScenarioConfig& config, int call_id) {
  return DeriveSeed(config.seed, 0x5eed, call_id);
}

}  // namespace

MetricAggregate Aggregate(std::vector<double> values) {
  MetricAggregate agg;
  if (values.empty()) return agg;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  agg.mean = sum / values.size();
  auto quantile = [&](double q) {
    double pos = q * (values.size() - 1);
    size_t lo = static_cast<size_t>(pos);
    size_t hi = std::min(lo + 1, values.size() - 1);
    double frac = pos - lo;
    return values[lo] * (1.0 - frac) + values[hi] * frac;
  };
  agg.median = quantile(0.5);
  agg.p10 = quantile(0.1);
  agg.p90 = quantile(0.9);
  return agg;
}

CollectResult Collect(const ScenarioConfig& config, int n_calls, int threads) {
  if (n_calls < 1) {
    throw Error(ErrorCode::kBadConfig, "collect needs at least one call");
  }
  orbital::Constellation base = BuildConstellation(config);

  struct CallOutput {
    std::vector<policy::DatasetRow> rows;
    bool failed = false;
  };
  std::vector<CallOutput> outputs(n_calls);

  ParallelCalls(n_calls, threads, [&](int call_id) {
    try {
      CallEnvironment env = BuildCallEnvironment(config, base, call_id);
      RandomQueuePolicy policy(DeriveSeed(config.seed, 0xa0, call_id));
      rtc::CallMetrics metrics =
          rtc::RunCall(env.trace, policy, CallSeed(config, call_id),
                       config.rtc);
      for (const rtc::SegmentRecord& seg : metrics.per_segment) {
        policy::DatasetRow row;
        row.call_id = call_id;
        row.segment_index = seg.segment_index;
        row.action_queue_ms = seg.action_queue_ms;
        row.raw_bitrate_mbps = seg.raw_bitrate_mbps;
        row.raw_freeze_per_min = seg.raw_freeze_per_min;
        row.state = policy::BuildState(
            std::span<const int>(env.trace.serving_sat_id),
            seg.segment_index * policy::kSegmentSeconds);
        outputs[call_id].rows.push_back(row);
      }
    } catch (const std::exception&) {
      outputs[call_id].failed = true;
    }
  });

  CollectResult result;
  for (const CallOutput& out : outputs) {
    if (out.failed) {
      ++result.calls_failed;
      continue;
    }
    ++result.calls_completed;
    result.rows.insert(result.rows.end(), out.rows.begin(), out.rows.end());
  }
  return result;
}

const ArmResult& EvalReport::arm(const std::string& name) const {
  for (const ArmResult& a : arms) {
    if (a.name == name) return a;
  }
  throw Error(ErrorCode::kBadConfig, "no arm named " + name);
}

EvalReport Evaluate(const ScenarioConfig& config, const std::vector<Arm>& arms,
                    int n_calls, int threads) {
  if (arms.size() < 2) {
    throw Error(ErrorCode::kBadConfig, "A/B evaluation needs >= 2 arms");
  }
  orbital::Constellation base = BuildConstellation(config);

  struct CallOutput {
    std::vector<rtc::CallMetrics> per_arm;
    std::vector<double> gaps_s;
    bool failed = false;
  };
  std::vector<CallOutput> outputs(n_calls);

  ParallelCalls(n_calls, threads, [&](int call_id) {
    try {
      CallEnvironment env = BuildCallEnvironment(config, base, call_id);
      CallOutput& out = outputs[call_id];
      for (const Arm& arm : arms) {
        auto policy = arm.make_policy(CallSeed(config, call_id));
        out.per_arm.push_back(rtc::RunCall(env.trace, *policy,
                                           CallSeed(config, call_id),
                                           config.rtc));
      }
      const auto& handovers = env.trace.handover_seconds;
      for (size_t i = 1; i < handovers.size(); ++i) {
        out.gaps_s.push_back(handovers[i] - handovers[i - 1]);
      }
    } catch (const std::exception&) {
      outputs[call_id].failed = true;
    }
  });

  EvalReport report;
  report.scenario = config.name;
  report.arms.resize(arms.size());
  for (size_t a = 0; a < arms.size(); ++a) {
    report.arms[a].name = arms[a].name;
  }
  for (const CallOutput& out : outputs) {
    if (out.failed) {
      ++report.calls_failed;
      continue;
    }
    for (size_t a = 0; a < arms.size(); ++a) {
      report.arms[a].calls.push_back(out.per_arm[a]);
      for (const rtc::SegmentRecord& seg : out.per_arm[a].per_segment) {
        ++report.arms[a].action_histogram[seg.action_queue_ms];
      }
    }
    report.inter_handover_gaps_s.insert(report.inter_handover_gaps_s.end(),
                                        out.gaps_s.begin(), out.gaps_s.end());
  }

  for (ArmResult& arm : report.arms) {
    std::vector<double> bitrate, freeze, delay, loss;
    for (const rtc::CallMetrics& m : arm.calls) {
      bitrate.push_back(m.avg_bitrate_mbps);
      freeze.push_back(m.freeze_rate_per_min);
      delay.push_back(m.e2e_delay_ms);
      loss.push_back(m.packet_loss_frac);
    }
    arm.bitrate_mbps = Aggregate(bitrate);
    arm.freeze_per_min = Aggregate(freeze);
    arm.e2e_delay_ms = Aggregate(delay);
    arm.loss_frac = Aggregate(loss);
  }
  return report;
}

HandoverStats ComputeHandoverStats(const ScenarioConfig& config, int n_calls,
                                   int threads) {
  orbital::Constellation base = BuildConstellation(config);
  struct CallOutput {
    int handovers = 0;
    std::vector<double> gaps_s;
    double coverage = 0.0;
  };
  std::vector<CallOutput> outputs(n_calls);

  ParallelCalls(n_calls, threads, [&](int call_id) {
    CallEnvironment env = BuildCallEnvironment(config, base, call_id);
    CallOutput& out = outputs[call_id];
    std::vector<int> seconds = env.schedule.HandoverSeconds();
    out.handovers = static_cast<int>(seconds.size());
    for (size_t i = 1; i < seconds.size(); ++i) {
      out.gaps_s.push_back(seconds[i] - seconds[i - 1]);
    }
    int covered = 0;
    for (int id : env.schedule.serving_sat_id) {
      if (id >= 0) ++covered;
    }
    out.coverage = static_cast<double>(covered) / env.schedule.duration_s;
  });

  HandoverStats stats;
  int zero_or_one = 0;
  double coverage_sum = 0.0;
  for (const CallOutput& out : outputs) {
    stats.handovers_per_call.push_back(out.handovers);
    stats.inter_handover_gaps_s.insert(stats.inter_handover_gaps_s.end(),
                                       out.gaps_s.begin(), out.gaps_s.end());
    stats.max_handovers = std::max(stats.max_handovers, out.handovers);
    if (out.handovers <= 1) ++zero_or_one;
    coverage_sum += out.coverage;
  }
  stats.mean_coverage_frac = n_calls > 0 ? coverage_sum / n_calls : 0.0;
  stats.calls_with_0_or_1_frac =
      n_calls > 0 ? static_cast<double>(zero_or_one) / n_calls : 0.0;
  return stats;
}

void WriteCallsCsv(const EvalReport& report, std::ostream& out) {
  out << "call_id,scenario,policy,avg_bitrate_mbps,freeze_rate_per_min,"
         "e2e_delay_ms,loss_frac\n";
  char buf[256];
  for (const ArmResult& arm : report.arms) {
    for (size_t i = 0; i < arm.calls.size(); ++i) {
      const rtc::CallMetrics& m = arm.calls[i];
      std::snprintf(buf, sizeof(buf), "%zu,%s,%s,%.6f,%.6f,%.6f,%.6f\n", i,
                    report.scenario.c_str(), arm.name.c_str(),
                    m.avg_bitrate_mbps, m.freeze_rate_per_min, m.e2e_delay_ms,
                    m.packet_loss_frac);
      out << buf;
    }
  }
}

void WriteReportCsv(const EvalReport& report, std::ostream& out) {
  out << "scenario,policy,metric,mean,median,p10,p90\n";
  char buf[256];
  auto row = [&](const ArmResult& arm, const char* metric,
                 const MetricAggregate& agg) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%s,%.6f,%.6f,%.6f,%.6f\n",
                  report.scenario.c_str(), arm.name.c_str(), metric, agg.mean,
                  agg.median, agg.p10, agg.p90);
    out << buf;
  };
  for (const ArmResult& arm : report.arms) {
    row(arm, "bitrate_mbps", arm.bitrate_mbps);
    row(arm, "freeze_per_min", arm.freeze_per_min);
    row(arm, "e2e_delay_ms", arm.e2e_delay_ms);
    row(arm, "loss_frac", arm.loss_frac);
  }
}

void WriteSummary(const EvalReport& report, std::ostream& out) {
  out << "scenario: " << report.scenario << "\n";
  out << "calls per arm: "
      << (report.arms.empty() ? 0 : report.arms[0].calls.size())
      << " (failed: " << report.calls_failed << ")\n\n";
  char buf[256];
  for (const ArmResult& arm : report.arms) {
    std::snprintf(buf, sizeof(buf),
                  "%-14s bitrate %6.3f Mbps | freeze %5.2f /min | delay "
                  "%7.1f ms | loss %5.2f %%\n",
                  arm.name.c_str(), arm.bitrate_mbps.mean,
                  arm.freeze_per_min.mean, arm.e2e_delay_ms.mean,
                  arm.loss_frac.mean * 100.0);
    out << buf;
    out << "               actions:";
    for (const auto& [limit, count] : arm.action_histogram) {
      out << " " << limit << "ms x" << count;
    }
    out << "\n";
  }
  if (report.arms.size() >= 2) {
    const ArmResult& a = report.arms[0];
    const ArmResult& b = report.arms[1];
    if (b.bitrate_mbps.mean > 0.0 && b.freeze_per_min.mean > 0.0) {
      std::snprintf(buf, sizeof(buf),
                    "\n%s vs %s: bitrate x%.2f, freeze %+.1f%%\n",
                    a.name.c_str(), b.name.c_str(),
                    a.bitrate_mbps.mean / b.bitrate_mbps.mean,
                    (a.freeze_per_min.mean / b.freeze_per_min.mean - 1.0) *
                        100.0);
      out << buf;
    }
  }
}

void WriteHandoverHistogramCsv(const std::vector<double>& gaps_s,
                               std::ostream& out) {
  constexpr double kBinS = 30.0;
  std::map<int, int> bins;
  for (double gap : gaps_s) {
    ++bins[static_cast<int>(gap / kBinS)];
  }
  out << "gap_bin_start_s,gap_bin_end_s,count\n";
  for (const auto& [bin, count] : bins) {
    out << bin * static_cast<int>(kBinS) << ","
        << (bin + 1) * static_cast<int>(kBinS) << "," << count << "\n";
  }
}

}  // namespace harness
}  // namespace leortc
