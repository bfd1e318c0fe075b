#include "leortc/netsim/link_trace.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "leortc/common/error.h"
#include "leortc/common/rng.h"

namespace leortc {
namespace netsim {

LinkTrace BuildLinkTrace(const orbital::ServingSchedule& schedule,
                         const LinkParams& params, uint64_t seed) {
  if (schedule.duration_s < 1) {
    throw Error(ErrorCode::kEmptyInput, "empty serving schedule");
  }
  int n = schedule.duration_s;
  LinkTrace trace;
  trace.duration_s = n;
  trace.delay_ms = schedule.delay_ms;
  trace.capacity_kbps.assign(n, 0.0);
  trace.loss_prob.assign(n, params.loss_rate);
  trace.outage.assign(n, false);
  trace.serving_sat_id = schedule.serving_sat_id;
  trace.handover_seconds = schedule.HandoverSeconds();
  trace.outage_ms = params.handover_outage_ms;

  Rng rng(seed);
  double base_kbps = params.access_capacity_mbps * 1000.0;
  for (int t = 0; t < n; ++t) {
    double jitter = rng.NextDouble(-params.capacity_jitter_frac,
                                   params.capacity_jitter_frac);
    if (trace.serving_sat_id[t] >= 0) {
      trace.capacity_kbps[t] = base_kbps * (1.0 + jitter);
    }
  }

  int outage_seconds =
      static_cast<int>(std::ceil(params.handover_outage_ms / 1000.0));
  for (int h : trace.handover_seconds) {
    for (int t = h; t < std::min(n, h + outage_seconds); ++t) {
      trace.outage[t] = true;
      trace.loss_prob[t] = std::min(1.0, params.loss_rate + 0.10);
      trace.delay_ms[t] += 100.0;
    }
  }
  return trace;
}

void WriteLinkTraceCsv(const LinkTrace& trace, std::ostream& out) {
  out << "t,serving_sat_id,delay_ms,capacity_kbps,loss_prob,outage\n";
  char buf[160];
  for (int t = 0; t < trace.duration_s; ++t) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.6f,%.6f,%.6f,%d\n", t,
                  trace.serving_sat_id[t], trace.delay_ms[t],
                  trace.capacity_kbps[t], trace.loss_prob[t],
                  trace.outage[t] ? 1 : 0);
    out << buf;
  }
}

LinkTrace ReadLinkTraceCsv(std::istream& in) {
  LinkTrace trace;
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kIoError, "empty link trace csv");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    double vals[6];
    for (int i = 0; i < 6; ++i) {
      if (!std::getline(row, field, ',')) {
        throw Error(ErrorCode::kIoError, "short link trace row: " + line);
      }
      vals[i] = std::stod(field);
    }
    trace.serving_sat_id.push_back(static_cast<int>(vals[1]));
    trace.delay_ms.push_back(vals[2]);
    trace.capacity_kbps.push_back(vals[3]);
    trace.loss_prob.push_back(vals[4]);
    trace.outage.push_back(vals[5] != 0.0);
  }
  trace.duration_s = static_cast<int>(trace.delay_ms.size());
  for (int t = 1; t < trace.duration_s; ++t) {
    if (trace.serving_sat_id[t] >= 0 && trace.serving_sat_id[t - 1] >= 0 &&
        trace.serving_sat_id[t] != trace.serving_sat_id[t - 1]) {
      trace.handover_seconds.push_back(t);
    }
  }
  return trace;
}

}  // namespace netsim
}  // namespace leortc
