#include "leortc/policy/qoe.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "leortc/common/error.h"

namespace leortc {
namespace policy {

int NearestActionIndex(int queue_limit_ms) {
  int best = 0;
  int best_dist = std::abs(queue_limit_ms - kActionsMs[0]);
  for (int i = 1; i < kNumActions; ++i) {
    int dist = std::abs(queue_limit_ms - kActionsMs[i]);
    if (dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  return best;
}

NormalizationBounds NormalizeDataset(std::vector<Experience>& experiences,
                                     const QoEWeights& weights) {
  if (experiences.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "cannot normalize empty dataset");
  }
  NormalizationBounds b;
  b.bitrate_min = b.bitrate_max = experiences[0].raw_bitrate_mbps;
  b.freeze_min = b.freeze_max = experiences[0].raw_freeze_per_min;
  for (const Experience& e : experiences) {
    b.bitrate_min = std::min(b.bitrate_min, e.raw_bitrate_mbps);
    b.bitrate_max = std::max(b.bitrate_max, e.raw_bitrate_mbps);
    b.freeze_min = std::min(b.freeze_min, e.raw_freeze_per_min);
    b.freeze_max = std::max(b.freeze_max, e.raw_freeze_per_min);
  }
  double bspan = b.bitrate_max - b.bitrate_min;
  double fspan = b.freeze_max - b.freeze_min;
  for (Experience& e : experiences) {
    e.R = bspan > 0.0 ? (e.raw_bitrate_mbps - b.bitrate_min) / bspan : 0.0;
    e.F = fspan > 0.0 ? (e.raw_freeze_per_min - b.freeze_min) / fspan : 0.0;
    e.r = Qoe(e.R, e.F, weights);
  }
  return b;
}

}  // namespace policy
}  // namespace leortc
