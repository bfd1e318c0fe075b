#include "leortc/policy/dataset.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "leortc/common/error.h"

namespace leortc {
namespace policy {

namespace {

std::string ExpectedHeader() {
  std::string h = "call_id,segment_index,action_queue_ms,raw_bitrate_mbps,"
                  "raw_freeze_per_min";
  for (int i = 0; i < kSegmentSeconds; ++i) {
    h += ",h" + std::to_string(i);
  }
  h += ",handover_total";
  return h;
}

}  // namespace

void WriteDatasetCsv(const std::vector<DatasetRow>& rows, std::ostream& out) {
  out << ExpectedHeader() << "\n";
  for (const DatasetRow& row : rows) {
    char head[128];
    std::snprintf(head, sizeof(head), "%d,%d,%d,%.6f,%.6f", row.call_id,
                  row.segment_index, row.action_queue_ms,
                  row.raw_bitrate_mbps, row.raw_freeze_per_min);
    out << head;
    for (int i = 0; i < kSegmentSeconds; ++i) {
      out << ',' << (row.state.h[i] > 0.5f ? 1 : 0);
    }
    out << ',' << row.state.total_handovers << "\n";
  }
}

std::vector<DatasetRow> ReadDatasetCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kBadConfig, "dataset csv is empty");
  }
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
    line.pop_back();
  }
  if (line != ExpectedHeader()) {
    throw Error(ErrorCode::kBadConfig,
                "dataset csv header mismatch; expected columns: call_id, "
                "segment_index, action_queue_ms, raw_bitrate_mbps, "
                "raw_freeze_per_min, h0..h119, handover_total");
  }

  std::vector<DatasetRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row_in(line);
    std::string field;
    std::vector<double> values;
    while (std::getline(row_in, field, ',')) {
      try {
        values.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kBadConfig,
                    "dataset csv line " + std::to_string(line_no) +
                        ": non-numeric field '" + field + "'");
      }
    }
    if (static_cast<int>(values.size()) != 6 + kSegmentSeconds) {
      throw Error(ErrorCode::kBadConfig,
                  "dataset csv line " + std::to_string(line_no) + ": got " +
                      std::to_string(values.size()) + " columns, expected " +
                      std::to_string(6 + kSegmentSeconds));
    }
    DatasetRow row;
    row.call_id = static_cast<int>(values[0]);
    row.segment_index = static_cast<int>(values[1]);
    row.action_queue_ms = static_cast<int>(values[2]);
    row.raw_bitrate_mbps = values[3];
    row.raw_freeze_per_min = values[4];
    int total = static_cast<int>(values[5 + kSegmentSeconds]);
    for (int i = 0; i < kSegmentSeconds; ++i) {
      row.state.h[i] = values[5 + i] > 0.5 ? 1.0f : 0.0f;
    }
    row.state.total_handovers = total;
    row.state.t_norm.fill(
        static_cast<float>(std::min(total, kHandoverCap)) / kHandoverCap);
    rows.push_back(row);
  }
  return rows;
}

std::vector<Experience> ToExperiences(const std::vector<DatasetRow>& rows) {
  std::vector<Experience> xs;
  xs.reserve(rows.size());
  for (const DatasetRow& row : rows) {
    Experience e;
    e.state = row.state;
    e.action_queue_ms = row.action_queue_ms;
    e.raw_bitrate_mbps = row.raw_bitrate_mbps;
    e.raw_freeze_per_min = row.raw_freeze_per_min;
    xs.push_back(e);
  }
  return xs;
}

}  // namespace policy
}  // namespace leortc
