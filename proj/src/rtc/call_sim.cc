#include "leortc/rtc/call_sim.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "leortc/common/error.h"
#include "leortc/common/rng.h"
#include "leortc/rtc/freeze.h"

namespace leortc {
namespace rtc {

namespace {

constexpr double kMinFreezeGapMs = 150.0;

struct FrameState {
  int total_packets = 0;
  int received_packets = 0;
  int64_t bytes = 0;
  double capture_ms = 0.0;
  bool dead = false;  // a packet was lost; the frame can never complete
  bool done = false;
};

struct TransitPacket {
  double arrival_ms = 0.0;
  Packet packet;
};

struct PendingReport {
  double report_ms = 0.0;
  PacketFeedback feedback;
  bool operator<(const PendingReport& o) const {
    return report_ms < o.report_ms;
  }
};

struct FeedbackMessage {
  double arrival_ms = 0.0;
  std::vector<PacketFeedback> batch;
};

// Dead-air windows after each handover, in milliseconds.
std::vector<std::pair<double, double>> DeadAirWindows(
    const netsim::LinkTrace& trace) {
  std::vector<std::pair<double, double>> windows;
  if (trace.outage_ms <= 0.0) return windows;
  for (int h : trace.handover_seconds) {
    windows.emplace_back(h * 1000.0, h * 1000.0 + trace.outage_ms);
  }
  return windows;
}

bool InDeadAir(const std::vector<std::pair<double, double>>& windows,
               double t_ms, double* end_ms) {
  for (const auto& [a, b] : windows) {
    if (t_ms >= a && t_ms < b) {
      if (end_ms) *end_ms = b;
      return true;
    }
    if (a > t_ms) break;
  }
  return false;
}

}  // namespace

std::vector<std::pair<double, double>> ComputeStalls(
    const std::vector<double>& renders, double call_end_ms) {
  std::vector<std::pair<double, double>> stalls;
  if (renders.empty()) {
    if (call_end_ms > kMinFreezeGapMs) stalls.emplace_back(0.0, call_end_ms);
    return stalls;
  }
  std::vector<double> intervals;
  auto threshold_at = [&](size_t idx) {
    // idx is the index of the frame preceding the gap.
    intervals.clear();
    for (size_t j = idx; j >= 1; --j) {
      if (renders[j - 1] < renders[idx] - 1000.0) break;
      intervals.push_back(renders[j] - renders[j - 1]);
    }
    if (intervals.empty()) return kMinFreezeGapMs;
    std::sort(intervals.begin(), intervals.end());
    return std::max(3.0 * intervals[intervals.size() / 2], kMinFreezeGapMs);
  };

  for (size_t i = 1; i < renders.size(); ++i) {
    double gap = renders[i] - renders[i - 1];
    if (gap > threshold_at(i - 1)) {
      stalls.emplace_back(renders[i - 1], renders[i]);
    }
  }
  double tail = call_end_ms - renders.back();
  if (tail > threshold_at(renders.size() - 1)) {
    stalls.emplace_back(renders.back(), call_end_ms);
  }
  return stalls;
}

CallMetrics RunCall(const netsim::LinkTrace& trace, QueuePolicy& policy,
                    uint64_t seed, const RtcConfig& config) {
  if (trace.duration_s < config.segment_duration_s) {
    throw Error(ErrorCode::kTraceTooShort,
                "trace shorter than one segment: " +
                    std::to_string(trace.duration_s) + " s");
  }

  const double duration_ms = trace.duration_s * 1000.0;
  const double tick = config.tick_ms;
  const auto dead_air = DeadAirWindows(trace);
  Rng rng(seed);

  GccController gcc(config.gcc);
  PacingQueue pacer(config.pacer);

  // Sender state.
  int64_t next_seq = 0;
  int next_frame_id = 0;
  double next_frame_ms = 0.0;
  int64_t in_flight_bytes = 0;

  // Network state.
  std::deque<Packet> bottleneck;
  int64_t bottleneck_bytes = 0;
  double bottleneck_budget = 0.0;
  std::deque<TransitPacket> transit;
  double last_arrival_ms = 0.0;

  // Receiver state.
  std::vector<FrameState> frames;
  std::vector<PendingReport> pending_reports;
  std::deque<FeedbackMessage> feedback_in_flight;
  double last_feedback_arrival_ms = 0.0;
  double next_feedback_ms = config.feedback_interval_ms;

  std::vector<double> render_times;
  std::vector<int64_t> segment_rendered_bytes(
      trace.duration_s / config.segment_duration_s, 0);
  std::vector<int> segment_actions(segment_rendered_bytes.size(), 0);

  // Counters for conservation and metrics.
  int64_t created = 0, delivered = 0, lost_channel = 0, lost_buffer = 0;
  int64_t wire_sent = 0;
  double delay_sum_ms = 0.0;
  int64_t frames_rendered = 0, frames_late = 0;
  int64_t conservation_checks = 0;

  auto second_of = [&](double t_ms) {
    int s = static_cast<int>(t_ms / 1000.0);
    return std::min(s, trace.duration_s - 1);
  };

  // Delivery time for receiver-to-sender traffic created at t_ms; rides
  // through dead air and coverage gaps.
  auto reverse_path_arrival = [&](double t_ms) {
    double t = t_ms;
    for (int guard = 0; guard < trace.duration_s + 8; ++guard) {
      double end = 0.0;
      if (InDeadAir(dead_air, t, &end)) {
        t = end;
        continue;
      }
      int s = second_of(t);
      if (trace.capacity_kbps[s] <= 0.0) {
        t = (s + 1) * 1000.0;
        if (t >= duration_ms) break;
        continue;
      }
      return t + trace.delay_ms[s];
    }
    return t + 1.0;
  };

  const int num_segments = trace.duration_s / config.segment_duration_s;
  const double segment_ms = config.segment_duration_s * 1000.0;

  for (double now = 0.0; now < duration_ms; now += tick) {
    const int sec = second_of(now);

    // Segment boundaries: consult the queue policy.
    int seg = static_cast<int>(now / segment_ms);
    if (seg < num_segments && std::fmod(now, segment_ms) == 0.0) {
      int limit = policy.OnSegmentStart(trace, seg);
      pacer.set_queue_limit_ms(static_cast<double>(limit));
      segment_actions[seg] = limit;
    }

    // Encoder: frames at fps, sized to the current target.
    while (next_frame_ms <= now) {
      double target = gcc.target_rate_kbps();
      int frame_bytes = std::max(
          config.mtu_bytes / 8,
          static_cast<int>(target / 8.0 * (1000.0 / config.fps)));
      FrameState fs;
      fs.capture_ms = next_frame_ms;
      fs.bytes = frame_bytes;
      fs.total_packets = (frame_bytes + config.mtu_bytes - 1) / config.mtu_bytes;
      frames.push_back(fs);

      int remaining = frame_bytes;
      for (int i = 0; i < frames.back().total_packets; ++i) {
        Packet p;
        p.seq = next_seq++;
        p.frame_id = next_frame_id;
        p.size_bytes = std::min(remaining, config.mtu_bytes);
        remaining -= p.size_bytes;
        p.capture_ms = next_frame_ms;
        pacer.Enqueue(p);
        ++created;
      }
      ++next_frame_id;
      next_frame_ms += 1000.0 / config.fps;
    }

    // Pacer: congestion-window gate, then drain.
    bool congested = false;
    if (config.enable_congestion_window && gcc.min_rtt_ms() > 0.0) {
      double cwnd =
          std::max(config.min_cwnd_bytes,
                   gcc.target_rate_kbps() *
                       (gcc.min_rtt_ms() + config.cwnd_extra_ms) / 8.0);
      congested = static_cast<double>(in_flight_bytes) > cwnd;
    }
    double buffer_cap_bytes =
        trace.capacity_kbps[sec] * config.bottleneck_buffer_ms / 8.0;
    for (Packet& p : pacer.Drain(now, gcc.target_rate_kbps(), congested)) {
      ++wire_sent;
      if (bottleneck_bytes + p.size_bytes > buffer_cap_bytes) {
        ++lost_buffer;
        frames[p.frame_id].dead = true;
        PendingReport r;
        r.report_ms = now + trace.delay_ms[sec];
        r.feedback = {p.capture_ms, p.wire_ms, 0.0, p.size_bytes, true};
        pending_reports.push_back(r);
        continue;  // dropped before entering the link; never in flight
      }
      in_flight_bytes += p.size_bytes;
      bottleneck_bytes += p.size_bytes;
      bottleneck.push_back(p);
    }

    // Bottleneck service. Dead air after a handover stops the link.
    double dead_end = 0.0;
    bool dead = InDeadAir(dead_air, now, &dead_end);
    if (dead) {
      bottleneck_budget = 0.0;
    } else {
      bottleneck_budget += trace.capacity_kbps[sec] * tick / 8.0;
    }
    while (!bottleneck.empty() &&
           bottleneck_budget >=
               static_cast<double>(bottleneck.front().size_bytes)) {
      Packet p = bottleneck.front();
      bottleneck.pop_front();
      bottleneck_budget -= p.size_bytes;
      bottleneck_bytes -= p.size_bytes;
      if (rng.NextBernoulli(trace.loss_prob[sec])) {
        ++lost_channel;
        frames[p.frame_id].dead = true;
        PendingReport r;
        r.report_ms = now + trace.delay_ms[sec];
        r.feedback = {p.capture_ms, p.wire_ms, 0.0, p.size_bytes, true};
        pending_reports.push_back(r);
        in_flight_bytes -= p.size_bytes;
        continue;
      }
      TransitPacket tp;
      tp.arrival_ms = std::max(last_arrival_ms, now + trace.delay_ms[sec]);
      last_arrival_ms = tp.arrival_ms;
      tp.packet = p;
      transit.push_back(tp);
    }
    if (bottleneck.empty()) bottleneck_budget = 0.0;

    // Receiver: arrivals, frame completion, render decision.
    while (!transit.empty() && transit.front().arrival_ms <= now) {
      TransitPacket tp = transit.front();
      transit.pop_front();
      const Packet& p = tp.packet;
      ++delivered;
      in_flight_bytes -= p.size_bytes;
      delay_sum_ms += tp.arrival_ms - p.capture_ms;

      FrameState& f = frames[p.frame_id];
      if (++f.received_packets == f.total_packets && !f.dead && !f.done) {
        f.done = true;
        double lateness = tp.arrival_ms - f.capture_ms;
        if (lateness <= config.playout_deadline_ms) {
          render_times.push_back(tp.arrival_ms);
          ++frames_rendered;
          int s = std::min(static_cast<int>(tp.arrival_ms / segment_ms),
                           num_segments - 1);
          segment_rendered_bytes[s] += f.bytes;
        } else {
          ++frames_late;
        }
      }
      PendingReport r;
      r.report_ms = tp.arrival_ms;
      r.feedback = {p.capture_ms, p.wire_ms, tp.arrival_ms, p.size_bytes,
                    false};
      pending_reports.push_back(r);
    }

    // Transport feedback every interval; rides the reverse path.
    if (now >= next_feedback_ms) {
      next_feedback_ms += config.feedback_interval_ms;
      std::vector<PacketFeedback> batch;
      size_t kept = 0;
      for (size_t i = 0; i < pending_reports.size(); ++i) {
        if (pending_reports[i].report_ms <= now) {
          batch.push_back(pending_reports[i].feedback);
        } else {
          pending_reports[kept++] = pending_reports[i];
        }
      }
      pending_reports.resize(kept);
      if (!batch.empty()) {
        std::stable_sort(batch.begin(), batch.end(),
                         [](const PacketFeedback& a, const PacketFeedback& b) {
                           return a.capture_ms < b.capture_ms;
                         });
        FeedbackMessage msg;
        msg.arrival_ms =
            std::max(last_feedback_arrival_ms, reverse_path_arrival(now));
        last_feedback_arrival_ms = msg.arrival_ms;
        msg.batch = std::move(batch);
        feedback_in_flight.push_back(std::move(msg));
      }
    }

    // Sender processes arrived feedback.
    while (!feedback_in_flight.empty() &&
           feedback_in_flight.front().arrival_ms <= now) {
      FeedbackMessage msg = std::move(feedback_in_flight.front());
      feedback_in_flight.pop_front();
      // in_flight tracks bytes inside the network (bottleneck + transit)
      // and was already settled at loss/arrival time; the batch here only
      // drives the controller.
      gcc.OnFeedback(msg.batch, now);
    }

    // Packet conservation at every tick.
    int64_t accounted = static_cast<int64_t>(pacer.size()) +
                        static_cast<int64_t>(bottleneck.size()) +
                        static_cast<int64_t>(transit.size()) + delivered +
                        lost_channel + lost_buffer;
    if (accounted != created) {
      throw std::logic_error("packet conservation violated at t=" +
                             std::to_string(now));
    }
    ++conservation_checks;
  }

  CallMetrics m;
  m.handovers = static_cast<int>(trace.handover_seconds.size());
  m.packets_sent = wire_sent;
  m.packets_delivered = delivered;
  m.packets_lost = lost_channel + lost_buffer;
  m.frames_rendered = frames_rendered;
  m.frames_discarded_late = frames_late;
  m.conservation_checks = conservation_checks;
  m.final_target_kbps = gcc.target_rate_kbps();

  int64_t rendered_bytes = 0;
  for (int64_t b : segment_rendered_bytes) rendered_bytes += b;
  m.avg_bitrate_mbps =
      static_cast<double>(rendered_bytes) * 8.0 / trace.duration_s / 1e6;
  m.e2e_delay_ms = delivered > 0 ? delay_sum_ms / delivered : 0.0;
  m.packet_loss_frac =
      wire_sent > 0 ? static_cast<double>(m.packets_lost) / wire_sent : 0.0;

  auto stalls = ComputeStalls(render_times, duration_ms);
  m.freeze_rate_per_min =
      static_cast<double>(stalls.size()) / (trace.duration_s / 60.0);

  for (int s = 0; s < num_segments; ++s) {
    SegmentRecord rec;
    rec.segment_index = s;
    rec.duration_s = config.segment_duration_s;
    rec.action_queue_ms = segment_actions[s];
    rec.raw_bitrate_mbps = static_cast<double>(segment_rendered_bytes[s]) *
                           8.0 / config.segment_duration_s / 1e6;
    double a = s * segment_ms, b = (s + 1) * segment_ms;
    int overlapping = 0;
    for (const auto& [sa, sb] : stalls) {
      if (sa < b && sb > a) ++overlapping;
    }
    rec.raw_freeze_per_min =
        static_cast<double>(overlapping) / (config.segment_duration_s / 60.0);
    m.per_segment.push_back(rec);
  }
  return m;
}

}  // namespace rtc
}  // namespace leortc
