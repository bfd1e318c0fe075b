#ifndef LEORTC_POLICY_QOE_H_
#define LEORTC_POLICY_QOE_H_

#include <array>
#include <vector>

#include "leortc/policy/state.h"

namespace leortc {
namespace policy {

// The learned action space: maximum pacing-queue limits in ms, indexed as
// classes 0..3.
constexpr std::array<int, 4> kActionsMs = {500, 600, 900, 2000};
constexpr int kNumActions = 4;

// Nearest action for an arbitrary collection-time limit; ties pick the
// smaller limit.
int NearestActionIndex(int queue_limit_ms);

struct QoEWeights {
  double alpha = 2.0;
  double beta = 1.0;
};

inline double Qoe(double normalized_bitrate, double normalized_freeze,
                  const QoEWeights& w = {}) {
  return w.alpha * normalized_bitrate - w.beta * normalized_freeze;
}

// One segment of collected experience.
struct Experience {
  SegmentState state;
  int action_queue_ms = 0;     // collection-time limit, raw
  double raw_bitrate_mbps = 0.0;
  double raw_freeze_per_min = 0.0;
  double R = 0.0;  // min-max normalized bitrate
  double F = 0.0;  // min-max normalized freeze rate
  double r = 0.0;  // QoE score alpha*R - beta*F
};

// Min-max normalizes R and F over the dataset and fills r. A degenerate
// feature (max == min) maps to zero. The bounds are returned so labeling
// stays reproducible.
struct NormalizationBounds {
  double bitrate_min = 0.0, bitrate_max = 0.0;
  double freeze_min = 0.0, freeze_max = 0.0;
};

NormalizationBounds NormalizeDataset(std::vector<Experience>& experiences,
                                     const QoEWeights& weights = {});

}  // namespace policy
}  // namespace leortc

#endif  // LEORTC_POLICY_QOE_H_
