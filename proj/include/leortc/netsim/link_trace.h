#ifndef LEORTC_NETSIM_LINK_TRACE_H_
#define LEORTC_NETSIM_LINK_TRACE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "leortc/orbital/schedule.h"

namespace leortc {
namespace netsim {

struct LinkParams {
  double access_capacity_mbps = 6.0;
  double capacity_jitter_frac = 0.15;
  double loss_rate = 0.01;
  double handover_outage_ms = 400.0;
  double isl_capacity_gbps = 1.0;  // recorded; access link is the bottleneck
};

// Per-second path trace consumed by the call simulator.
struct LinkTrace {
  int duration_s = 0;
  std::vector<double> delay_ms;
  std::vector<double> capacity_kbps;
  std::vector<double> loss_prob;
  std::vector<bool> outage;
  std::vector<int> serving_sat_id;
  std::vector<int> handover_seconds;
  // Disruption window length the outage flags were derived from; the call
  // simulator treats [h, h + outage_ms) as dead air after each handover.
  double outage_ms = 0.0;
};

// Expands a serving schedule into a link trace. Capacity jitter is drawn
// per second from uniform(-jitter, +jitter) with the given seed; outage
// seconds carry elevated loss (+0.10) and a +100 ms delay spike. Capacity
// is zero on seconds with no serving satellite.
LinkTrace BuildLinkTrace(const orbital::ServingSchedule& schedule,
                         const LinkParams& params, uint64_t seed);

void WriteLinkTraceCsv(const LinkTrace& trace, std::ostream& out);
LinkTrace ReadLinkTraceCsv(std::istream& in);

}  // namespace netsim
}  // namespace leortc

#endif  // LEORTC_NETSIM_LINK_TRACE_H_
