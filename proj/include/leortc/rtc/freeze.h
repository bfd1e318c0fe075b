#ifndef LEORTC_RTC_FREEZE_H_
#define LEORTC_RTC_FREEZE_H_

#include <vector>

namespace leortc {
namespace rtc {

// Counts render stalls in a nondecreasing series of frame render times.
// A freeze is an inter-frame gap exceeding max(3 * median inter-frame
// interval over the trailing second, 150 ms); one gap counts once no
// matter how long it lasts.
int DetectFreezes(const std::vector<double>& frame_times_ms);

}  // namespace rtc
}  // namespace leortc

#endif  // LEORTC_RTC_FREEZE_H_
