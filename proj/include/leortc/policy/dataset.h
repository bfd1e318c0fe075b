#ifndef LEORTC_POLICY_DATASET_H_
#define LEORTC_POLICY_DATASET_H_

#include <iosfwd>
#include <vector>

#include "leortc/policy/qoe.h"

namespace leortc {
namespace policy {

// One per-segment record of the collection CSV. Columns: call_id,
// segment_index, action_queue_ms, raw_bitrate_mbps, raw_freeze_per_min,
// h0..h119, handover_total.
struct DatasetRow {
  int call_id = 0;
  int segment_index = 0;
  int action_queue_ms = 0;
  double raw_bitrate_mbps = 0.0;
  double raw_freeze_per_min = 0.0;
  SegmentState state;
};

void WriteDatasetCsv(const std::vector<DatasetRow>& rows, std::ostream& out);

// Throws Error(kBadConfig) with a schema diagnostic on malformed input.
std::vector<DatasetRow> ReadDatasetCsv(std::istream& in);

std::vector<Experience> ToExperiences(const std::vector<DatasetRow>& rows);

}  // namespace policy
}  // namespace leortc

#endif  // LEORTC_POLICY_DATASET_H_
