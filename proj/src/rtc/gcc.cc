#include "leortc/rtc/gcc.h"

#include <algorithm>
#include <cmath>

namespace leortc {
namespace rtc {

GccController::GccController(const GccConfig& config) : config_(config) {
  state_.target_bitrate_kbps = config.start_bitrate_kbps;
  state_.overuse_threshold = config.initial_threshold;
}

const CongestionState& GccController::OnFeedback(
    const std::vector<PacketFeedback>& batch, double now_ms) {
  if (batch.empty()) return state_;

  int lost = 0;
  for (const PacketFeedback& fb : batch) {
    if (fb.lost) {
      ++lost;
      continue;
    }
    recv_bytes_.emplace_back(fb.recv_ms, fb.size_bytes);

    double rtt_sample = now_ms - fb.wire_ms;
    if (rtt_sample > 0.0) {
      srtt_ms_ = srtt_ms_ < 0.0 ? rtt_sample
                                : 0.875 * srtt_ms_ + 0.125 * rtt_sample;
      min_rtt_ms_ = min_rtt_ms_ < 0.0 ? rtt_sample
                                      : std::min(min_rtt_ms_, rtt_sample);
    }

    // Packets sent within one burst interval form a group; a later key
    // closes the previous group.
    int64_t key =
        static_cast<int64_t>(std::floor(fb.capture_ms / config_.group_interval_ms));
    if (key != current_group_.key) {
      if (current_group_.key >= 0) OnGroupComplete(current_group_);
      current_group_.key = key;
    }
    current_group_.last_capture_ms = fb.capture_ms;
    current_group_.last_recv_ms = fb.recv_ms;
  }
  latest_loss_fraction_ = static_cast<double>(lost) / batch.size();
  state_.rtt_ms = srtt_ms_ < 0.0 ? 0.0 : srtt_ms_;

  while (!recv_bytes_.empty() &&
         recv_bytes_.front().first < now_ms - 2.0 * config_.recv_rate_window_ms) {
    recv_bytes_.pop_front();
  }

  // Loss overlay.
  if (latest_loss_fraction_ > config_.loss_cut_threshold &&
      now_ms - last_loss_cut_ms_ >= config_.loss_cut_cooldown_ms) {
    state_.target_bitrate_kbps *= (1.0 - 0.5 * latest_loss_fraction_);
    last_loss_cut_ms_ = now_ms;
    state_.state = RateControlState::kDecrease;
  }

  // Delay-based state machine.
  switch (signal_) {
    case Signal::kOveruse:
      if (now_ms - last_decrease_ms_ >= config_.decrease_cooldown_ms) {
        ApplyDecrease(now_ms);
      }
      break;
    case Signal::kUnderuse:
      state_.state = RateControlState::kHold;
      break;
    case Signal::kNormal:
      if (latest_loss_fraction_ < config_.loss_increase_threshold) {
        ApplyIncrease(now_ms);
      } else {
        state_.state = RateControlState::kHold;
      }
      break;
  }

  state_.target_bitrate_kbps =
      std::clamp(state_.target_bitrate_kbps, config_.min_bitrate_kbps,
                 config_.max_bitrate_kbps);
  last_rate_update_ms_ = now_ms;
  return state_;
}

void GccController::OnGroupComplete(const Group& group) {
  if (has_prev_group_) {
    double send_delta = group.last_capture_ms - prev_group_.last_capture_ms;
    double recv_delta = group.last_recv_ms - prev_group_.last_recv_ms;
    double delay_delta = recv_delta - send_delta;
    ++total_groups_;
    accumulated_delay_ms_ += delay_delta;
    smoothed_delay_ms_ =
        0.9 * smoothed_delay_ms_ + 0.1 * accumulated_delay_ms_;
    trend_window_.emplace_back(group.last_recv_ms, smoothed_delay_ms_);
    while (static_cast<int>(trend_window_.size()) >
           config_.trendline_window_groups) {
      trend_window_.pop_front();
    }

    if (trend_window_.size() >= 2) {
      // Least-squares slope of smoothed delay vs arrival time.
      double n = static_cast<double>(trend_window_.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      double x0 = trend_window_.front().first;
      for (const auto& [x, y] : trend_window_) {
        double xr = x - x0;
        sx += xr;
        sy += y;
        sxx += xr * xr;
        sxy += xr * y;
      }
      double denom = n * sxx - sx * sx;
      double slope = denom > 1e-9 ? (n * sxy - sx * sy) / denom : 0.0;
      state_.delay_gradient = slope;

      double modified_trend =
          slope * std::min<int64_t>(total_groups_, 60) * config_.threshold_gain;
      double gamma = state_.overuse_threshold;
      double group_dt =
          trend_window_.size() >= 2
              ? trend_window_.back().first -
                    trend_window_[trend_window_.size() - 2].first
              : 0.0;

      if (modified_trend > gamma) {
        overuse_accum_ms_ += group_dt;
        if (overuse_accum_ms_ >= config_.overuse_time_ms &&
            modified_trend >= prev_modified_trend_) {
          signal_ = Signal::kOveruse;
        }
      } else if (modified_trend < -gamma) {
        overuse_accum_ms_ = 0.0;
        signal_ = Signal::kUnderuse;
      } else {
        overuse_accum_ms_ = 0.0;
        signal_ = Signal::kNormal;
      }
      prev_modified_trend_ = modified_trend;
      UpdateThreshold(modified_trend, group.last_recv_ms);
    }
  }
  prev_group_ = group;
  has_prev_group_ = true;
}

void GccController::UpdateThreshold(double modified_trend, double now_ms) {
  if (last_threshold_update_ms_ < 0.0) last_threshold_update_ms_ = now_ms;
  double abs_trend = std::fabs(modified_trend);
  // Large outliers do not drag the threshold up.
  if (abs_trend > state_.overuse_threshold + 15.0) {
    last_threshold_update_ms_ = now_ms;
    return;
  }
  double k = abs_trend < state_.overuse_threshold ? config_.threshold_k_down
                                                  : config_.threshold_k_up;
  double dt = std::min(now_ms - last_threshold_update_ms_, 100.0);
  state_.overuse_threshold += dt * k * (abs_trend - state_.overuse_threshold);
  state_.overuse_threshold =
      std::clamp(state_.overuse_threshold, config_.min_threshold,
                 config_.max_threshold);
  last_threshold_update_ms_ = now_ms;
}

double GccController::RecvRateKbps(double now_ms) const {
  double window = config_.recv_rate_window_ms;
  int64_t bytes = 0;
  for (const auto& [recv_ms, size] : recv_bytes_) {
    if (recv_ms >= now_ms - window) bytes += size;
  }
  return static_cast<double>(bytes) * 8.0 / window;  // kbps
}

void GccController::ApplyIncrease(double now_ms) {
  state_.state = RateControlState::kIncrease;
  if (last_rate_update_ms_ < 0.0) return;
  double dt_s = std::clamp((now_ms - last_rate_update_ms_) / 1000.0, 0.0, 1.0);
  bool near = link_capacity_kbps_ > 0.0 &&
              state_.target_bitrate_kbps >=
                  config_.near_convergence_frac * link_capacity_kbps_;
  if (near) {
    double rtt_s = std::max(srtt_ms_, 10.0) / 1000.0;
    double add_kbps_per_s =
        config_.additive_packets_per_rtt * config_.packet_size_bytes * 8.0 /
        rtt_s / 1000.0;
    state_.target_bitrate_kbps += add_kbps_per_s * dt_s;
  } else {
    state_.target_bitrate_kbps *=
        std::pow(config_.multiplicative_increase_per_s, dt_s);
  }
}

void GccController::ApplyDecrease(double now_ms) {
  double recv = RecvRateKbps(now_ms);
  if (recv <= 0.0) recv = state_.target_bitrate_kbps;
  state_.target_bitrate_kbps =
      std::min(state_.target_bitrate_kbps, config_.decrease_factor * recv);
  link_capacity_kbps_ = recv;
  last_decrease_ms_ = now_ms;
  overuse_accum_ms_ = 0.0;
  signal_ = Signal::kNormal;
  state_.state = RateControlState::kDecrease;
}

}  // namespace rtc
}  // namespace leortc
