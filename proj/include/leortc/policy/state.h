#ifndef LEORTC_POLICY_STATE_H_
#define LEORTC_POLICY_STATE_H_

#include <array>
#include <span>
#include <vector>

#include "leortc/orbital/schedule.h"

namespace leortc {
namespace policy {

constexpr int kSegmentSeconds = 120;
constexpr int kStateDim = 2 * kSegmentSeconds;  // (h, t_norm) flattened
constexpr int kHandoverCap = 10;                // H_max for t_norm

// Bandit context for one segment: h[t] = 1 iff the serving satellite is
// predicted to change between seconds t and t+1 of the segment, and a
// constant t_norm = min(total, H_max)/H_max broadcast over all slots.
struct SegmentState {
  std::array<float, kSegmentSeconds> h{};
  std::array<float, kSegmentSeconds> t_norm{};
  int total_handovers = 0;

  std::array<float, kStateDim> Flatten() const {
    std::array<float, kStateDim> out;
    for (int i = 0; i < kSegmentSeconds; ++i) {
      out[i] = h[i];
      out[kSegmentSeconds + i] = t_norm[i];
    }
    return out;
  }
};

// Builds the state from a per-second serving-satellite series. Changes
// involving an uncovered second (-1) are coverage events, not handovers,
// and do not set h. Throws Error(kSegmentOutOfRange) when the window does
// not fit.
SegmentState BuildState(std::span<const int> serving_sat_id,
                        int segment_start_s);

inline SegmentState BuildState(const orbital::ServingSchedule& schedule,
                               int segment_start_s) {
  return BuildState(std::span<const int>(schedule.serving_sat_id),
                    segment_start_s);
}

// Clustering features: total handovers in the segment and their frequency
// per minute.
struct HandoverFeatures {
  double total = 0.0;
  double per_minute = 0.0;
};

inline HandoverFeatures FeaturesOf(const SegmentState& state) {
  return {static_cast<double>(state.total_handovers),
          state.total_handovers / (kSegmentSeconds / 60.0)};
}

}  // namespace policy
}  // namespace leortc

#endif  // LEORTC_POLICY_STATE_H_
