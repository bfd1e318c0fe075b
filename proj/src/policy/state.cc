#include "leortc/policy/state.h"

#include <algorithm>

#include "leortc/common/error.h"

namespace leortc {
namespace policy {

SegmentState BuildState(std::span<const int> serving, int segment_start_s) {
  if (segment_start_s < 0 ||
      segment_start_s + kSegmentSeconds > static_cast<int>(serving.size())) {
    throw Error(ErrorCode::kSegmentOutOfRange,
                "segment window exceeds schedule duration");
  }
  SegmentState state;
  int total = 0;
  for (int t = 0; t < kSegmentSeconds; ++t) {
    int idx = segment_start_s + t;
    if (idx + 1 < static_cast<int>(serving.size()) && serving[idx] >= 0 &&
        serving[idx + 1] >= 0 && serving[idx] != serving[idx + 1]) {
      state.h[t] = 1.0f;
      ++total;
    }
  }
  state.total_handovers = total;
  float t_norm =
      static_cast<float>(std::min(total, kHandoverCap)) / kHandoverCap;
  state.t_norm.fill(t_norm);
  return state;
}

}  // namespace policy
}  // namespace leortc
