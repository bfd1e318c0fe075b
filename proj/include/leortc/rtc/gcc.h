#ifndef LEORTC_RTC_GCC_H_
#define LEORTC_RTC_GCC_H_

#include <cstdint>
#include <deque>
#include <vector>

namespace leortc {
namespace rtc {

// Constants of the delay-based controller, kept in one block. These follow
// the public GCC design: trendline slope over the last 20 packet groups,
// adaptive overuse threshold, 0.85 decrease, 1.08x/s multiplicative
// increase with an additive mode near the capacity estimate, and the
// 10%/2% loss rules.
struct GccConfig {
  double min_bitrate_kbps = 150.0;
  double max_bitrate_kbps = 8000.0;
  double start_bitrate_kbps = 300.0;

  int trendline_window_groups = 20;
  double group_interval_ms = 5.0;
  double threshold_gain = 4.0;
  double initial_threshold = 12.5;
  double threshold_k_up = 0.0087;
  double threshold_k_down = 0.039;
  double min_threshold = 6.0;
  double max_threshold = 600.0;
  double overuse_time_ms = 10.0;

  double decrease_factor = 0.85;
  double multiplicative_increase_per_s = 1.08;
  double additive_packets_per_rtt = 0.5;
  double packet_size_bytes = 1200.0;
  // Additive mode engages once the target sits near the capacity estimate.
  double near_convergence_frac = 0.9;
  double decrease_cooldown_ms = 300.0;

  double loss_cut_threshold = 0.10;
  double loss_increase_threshold = 0.02;
  double loss_cut_cooldown_ms = 300.0;

  double recv_rate_window_ms = 500.0;
};

enum class RateControlState { kIncrease, kHold, kDecrease };

struct CongestionState {
  double target_bitrate_kbps = 300.0;
  double delay_gradient = 0.0;       // trendline slope, ms/ms
  double overuse_threshold = 12.5;   // adaptive gamma
  RateControlState state = RateControlState::kIncrease;
  double rtt_ms = 0.0;
};

struct PacketFeedback {
  double capture_ms = 0.0;  // media capture / pacer enqueue time
  double wire_ms = 0.0;     // network send time
  double recv_ms = 0.0;     // receive time; meaningless when lost
  int size_bytes = 0;
  bool lost = false;
};

// Delay- and loss-based rate controller. One-way delay is referenced to
// capture time, so queueing in the sender's own pacer shows up in the
// gradient exactly like network queueing does.
class GccController {
 public:
  explicit GccController(const GccConfig& config);

  // Batch of feedback delivered at `now_ms` (sender clock). Returns the
  // updated public state.
  const CongestionState& OnFeedback(const std::vector<PacketFeedback>& batch,
                                    double now_ms);

  const CongestionState& state() const { return state_; }
  double target_rate_kbps() const { return state_.target_bitrate_kbps; }
  double min_rtt_ms() const { return min_rtt_ms_; }

 private:
  struct Group {
    int64_t key = -1;
    double last_capture_ms = 0.0;
    double last_recv_ms = 0.0;
  };

  void OnGroupComplete(const Group& group);
  void UpdateThreshold(double modified_trend, double now_ms);
  double RecvRateKbps(double now_ms) const;
  void ApplyIncrease(double now_ms);
  void ApplyDecrease(double now_ms);

  GccConfig config_;
  CongestionState state_;

  Group current_group_;
  Group prev_group_;
  bool has_prev_group_ = false;

  double accumulated_delay_ms_ = 0.0;
  double smoothed_delay_ms_ = 0.0;
  std::deque<std::pair<double, double>> trend_window_;  // (recv_ms, smoothed)
  int64_t total_groups_ = 0;

  double overuse_accum_ms_ = 0.0;
  double prev_modified_trend_ = 0.0;
  double last_threshold_update_ms_ = -1.0;
  enum class Signal { kNormal, kOveruse, kUnderuse };
  Signal signal_ = Signal::kNormal;

  std::deque<std::pair<double, int>> recv_bytes_;  // (recv_ms, size)
  double link_capacity_kbps_ = -1.0;
  double last_rate_update_ms_ = -1.0;
  double last_decrease_ms_ = -1e9;
  double last_loss_cut_ms_ = -1e9;
  double latest_loss_fraction_ = 0.0;

  double srtt_ms_ = -1.0;
  double min_rtt_ms_ = -1.0;
};

}  // namespace rtc
}  // namespace leortc

#endif  // LEORTC_RTC_GCC_H_
