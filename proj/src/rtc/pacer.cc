#include "leortc/rtc/pacer.h"

#include <algorithm>

namespace leortc {
namespace rtc {

double PacingQueue::EffectiveRateKbps(double now_ms, double target_rate_kbps,
                                      bool congested) const {
  double paced = congested ? 0.0 : config_.pacing_multiplier * target_rate_kbps;
  if (queue_.empty()) return paced;
  // Rate needed for the whole backlog to leave before the oldest packet
  // exceeds the queue limit.
  double age_ms = now_ms - queue_.front().capture_ms;
  double window_ms = std::max(config_.max_queue_limit_ms - age_ms, 1.0);
  double required =
      static_cast<double>(queued_bytes_) * 8.0 / window_ms;  // kbit/ms = kbps
  return std::max(paced, required);
}

std::vector<Packet> PacingQueue::Drain(double now_ms, double target_rate_kbps,
                                       bool congested) {
  std::vector<Packet> released;
  if (queue_.empty()) {
    budget_bytes_ = 0.0;
    return released;
  }
  double rate = EffectiveRateKbps(now_ms, target_rate_kbps, congested);
  budget_bytes_ += rate * config_.base_tick_ms / 8.0;
  while (!queue_.empty() &&
         budget_bytes_ >= static_cast<double>(queue_.front().size_bytes)) {
    Packet p = queue_.front();
    queue_.pop_front();
    budget_bytes_ -= p.size_bytes;
    queued_bytes_ -= p.size_bytes;
    p.wire_ms = now_ms;
    released.push_back(p);
  }
  if (queue_.empty()) budget_bytes_ = 0.0;
  return released;
}

}  // namespace rtc
}  // namespace leortc
