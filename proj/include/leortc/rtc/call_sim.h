#ifndef LEORTC_RTC_CALL_SIM_H_
#define LEORTC_RTC_CALL_SIM_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "leortc/netsim/link_trace.h"
#include "leortc/rtc/gcc.h"
#include "leortc/rtc/pacer.h"

namespace leortc {
namespace rtc {

// One call's simulation constants. GCC internals live in GccConfig; the
// pacing queue limit inside `pacer` is the knob queue policies actuate.
struct RtcConfig {
  double tick_ms = 5.0;
  double fps = 30.0;
  int mtu_bytes = 1200;
  int segment_duration_s = 120;

  GccConfig gcc;
  PacerConfig pacer;

  double feedback_interval_ms = 100.0;

  // Congestion-window pushback: the pacer holds packets while unacked
  // bytes exceed target_rate * (min RTT + extra window). Without it the
  // pacing queue never accumulates and the queue limit has nothing to do.
  bool enable_congestion_window = true;
  double cwnd_extra_ms = 200.0;
  double min_cwnd_bytes = 12000.0;

  // Access-link device buffer, sized in milliseconds at the momentary
  // capacity. Tail-drop beyond it.
  double bottleneck_buffer_ms = 350.0;

  // Frames completing later than capture + deadline are not rendered.
  double playout_deadline_ms = 750.0;
};

struct SegmentRecord {
  int segment_index = 0;
  int duration_s = 120;
  double normalized_bitrate = 0.0;  // R, filled by dataset normalization
  double normalized_freeze = 0.0;   // F, filled by dataset normalization
  int action_queue_ms = 0;
  double raw_bitrate_mbps = 0.0;
  double raw_freeze_per_min = 0.0;
};

struct CallMetrics {
  double avg_bitrate_mbps = 0.0;  // rendered-frame goodput
  double freeze_rate_per_min = 0.0;
  double e2e_delay_ms = 0.0;  // mean capture->receive over delivered packets
  double packet_loss_frac = 0.0;
  std::vector<SegmentRecord> per_segment;

  double final_target_kbps = 0.0;
  int handovers = 0;
  int64_t packets_sent = 0;
  int64_t packets_delivered = 0;
  int64_t packets_lost = 0;
  int64_t frames_rendered = 0;
  int64_t frames_discarded_late = 0;
  int64_t conservation_checks = 0;
};

// Chooses the pacing-queue limit at each segment boundary.
class QueuePolicy {
 public:
  virtual ~QueuePolicy() = default;
  virtual int OnSegmentStart(const netsim::LinkTrace& trace,
                             int segment_index) = 0;
};

class FixedQueuePolicy : public QueuePolicy {
 public:
  explicit FixedQueuePolicy(int limit_ms) : limit_ms_(limit_ms) {}
  int OnSegmentStart(const netsim::LinkTrace&, int) override {
    return limit_ms_;
  }

 private:
  int limit_ms_;
};

// Simulates one call over the trace at a 5 ms tick: 30 fps encoder sized
// to the GCC target, pacing queue, capacity-rate bottleneck with tail
// drop, per-second delay/loss, receiver reassembly and render metrics.
// Packet conservation is asserted on every tick.
CallMetrics RunCall(const netsim::LinkTrace& trace, QueuePolicy& policy,
                    uint64_t seed, const RtcConfig& config = {});

// Stall intervals of a rendered-frame timeline over (0, call_end_ms]. A
// trailing gap with no further renders counts; a timeline with no renders
// at all is one stall spanning the call.
std::vector<std::pair<double, double>> ComputeStalls(
    const std::vector<double>& render_times_ms, double call_end_ms);

}  // namespace rtc
}  // namespace leortc

#endif  // LEORTC_RTC_CALL_SIM_H_
