#ifndef LEORTC_RTC_PACER_H_
#define LEORTC_RTC_PACER_H_

#include <cstdint>
#include <deque>
#include <vector>

namespace leortc {
namespace rtc {

struct PacerConfig {
  double max_queue_limit_ms = 2000.0;  // the actuated knob
  double pacing_multiplier = 2.5;
  double base_tick_ms = 5.0;
};

struct Packet {
  int64_t seq = 0;
  int frame_id = 0;
  int size_bytes = 0;
  double capture_ms = 0.0;  // pacer enqueue time
  double wire_ms = 0.0;     // set when released onto the network
};

// Send-side pacing queue. FIFO, never drops. The drain rate is
// pacing_multiplier * target rate, raised when needed so the queue clears
// before its oldest packet has waited max_queue_limit_ms; that raise
// applies even while the congestion window has the pacer blocked, which is
// what bounds packet staleness at the configured limit.
class PacingQueue {
 public:
  explicit PacingQueue(const PacerConfig& config) : config_(config) {}

  void set_queue_limit_ms(double limit_ms) {
    config_.max_queue_limit_ms = limit_ms;
  }
  double queue_limit_ms() const { return config_.max_queue_limit_ms; }

  void Enqueue(const Packet& packet) {
    queued_bytes_ += packet.size_bytes;
    queue_.push_back(packet);
  }

  // Advances one tick ending at now_ms and returns the packets released in
  // it. `congested` suppresses the multiplier-paced budget but not the
  // queue-limit flush.
  std::vector<Packet> Drain(double now_ms, double target_rate_kbps,
                            bool congested);

  double EffectiveRateKbps(double now_ms, double target_rate_kbps,
                           bool congested) const;

  size_t size() const { return queue_.size(); }
  int64_t queued_bytes() const { return queued_bytes_; }
  bool empty() const { return queue_.empty(); }

  double OldestAgeMs(double now_ms) const {
    return queue_.empty() ? 0.0 : now_ms - queue_.front().capture_ms;
  }

  // Time to drain the current backlog at the rate the next tick would use.
  double ProjectedDrainMs(double now_ms, double target_rate_kbps) const {
    if (queue_.empty()) return 0.0;
    double rate = EffectiveRateKbps(now_ms, target_rate_kbps, false);
    return static_cast<double>(queued_bytes_) * 8.0 / rate;
  }

 private:
  PacerConfig config_;
  std::deque<Packet> queue_;
  int64_t queued_bytes_ = 0;
  double budget_bytes_ = 0.0;
};

}  // namespace rtc
}  // namespace leortc

#endif  // LEORTC_RTC_PACER_H_
