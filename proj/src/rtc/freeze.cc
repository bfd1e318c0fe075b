#include "leortc/rtc/freeze.h"

#include <algorithm>

namespace leortc {
namespace rtc {

namespace {
constexpr double kMinFreezeGapMs = 150.0;
constexpr double kMedianWindowMs = 1000.0;
}  // namespace

int DetectFreezes(const std::vector<double>& frame_times_ms) {
  int freezes = 0;
  std::vector<double> intervals;
  for (size_t i = 1; i < frame_times_ms.size(); ++i) {
    double prev = frame_times_ms[i - 1];
    double gap = frame_times_ms[i] - prev;

    // Median inter-frame interval among frames rendered within the second
    // before the gap started.
    intervals.clear();
    for (size_t j = i - 1; j >= 1; --j) {
      if (frame_times_ms[j - 1] < prev - kMedianWindowMs) break;
      intervals.push_back(frame_times_ms[j] - frame_times_ms[j - 1]);
    }
    double threshold = kMinFreezeGapMs;
    if (!intervals.empty()) {
      std::sort(intervals.begin(), intervals.end());
      double median = intervals[intervals.size() / 2];
      threshold = std::max(3.0 * median, kMinFreezeGapMs);
    }
    if (gap > threshold) ++freezes;
  }
  return freezes;
}

}  // namespace rtc
}  // namespace leortc
