#ifndef LEORTC_HARNESS_POLICIES_H_
#define LEORTC_HARNESS_POLICIES_H_

#include <array>
#include <cstdint>

#include "leortc/common/rng.h"
#include "leortc/policy/expert.h"
#include "leortc/policy/transformer.h"
#include "leortc/rtc/call_sim.h"

namespace leortc {
namespace harness {

// Collection-time exploration grid.
constexpr std::array<int, 15> kRandomPolicyLimits = {
    100, 200, 300, 400, 500, 600, 700, 800,
    900, 1000, 1200, 1400, 1600, 1800, 2000};

// Draws a fresh limit uniformly from the 15-element grid before each
// segment.
class RandomQueuePolicy : public rtc::QueuePolicy {
 public:
  explicit RandomQueuePolicy(uint64_t seed) : rng_(seed) {}

  int OnSegmentStart(const netsim::LinkTrace&, int) override {
    return kRandomPolicyLimits[rng_.NextIndex(kRandomPolicyLimits.size())];
  }

 private:
  Rng rng_;
};

// Builds the segment state from the predicted serving schedule embedded in
// the trace and runs the transformer.
class TrainedQueuePolicy : public rtc::QueuePolicy {
 public:
  explicit TrainedQueuePolicy(const policy::PolicyWeights& weights)
      : weights_(&weights) {}

  int OnSegmentStart(const netsim::LinkTrace& trace,
                     int segment_index) override {
    policy::SegmentState state = policy::BuildState(
        std::span<const int>(trace.serving_sat_id),
        segment_index * policy::kSegmentSeconds);
    return policy::InferActionMs(*weights_, state);
  }

 private:
  const policy::PolicyWeights* weights_;
};

// Looks the segment state up in the clustered expert table; useful as an
// oracle arm next to the trained policy.
class ExpertQueuePolicy : public rtc::QueuePolicy {
 public:
  explicit ExpertQueuePolicy(const policy::ExpertTable& table)
      : table_(&table) {}

  int OnSegmentStart(const netsim::LinkTrace& trace,
                     int segment_index) override {
    policy::SegmentState state = policy::BuildState(
        std::span<const int>(trace.serving_sat_id),
        segment_index * policy::kSegmentSeconds);
    return policy::ExpertActionMs(*table_, policy::FeaturesOf(state));
  }

 private:
  const policy::ExpertTable* table_;
};

}  // namespace harness
}  // namespace leortc

#endif  // LEORTC_HARNESS_POLICIES_H_
