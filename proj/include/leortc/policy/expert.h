#ifndef LEORTC_POLICY_EXPERT_H_
#define LEORTC_POLICY_EXPERT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "leortc/policy/qoe.h"

namespace leortc {
namespace policy {

// Cluster-to-action map built over (total handovers, handovers per minute).
struct ExpertTable {
  int k = 4;
  // Centroids in z-scored feature space, k rows of (total, per_minute).
  std::vector<std::array<double, 2>> centroids;
  std::vector<int> labels;  // action index per cluster
  // Feature scaling captured from the training set.
  std::array<double, 2> feature_mean{};
  std::array<double, 2> feature_std{};
};

// K-means++ seeded clustering (Lloyd iterations to a fixed assignment or
// 300 rounds) over z-scored handover features, then each cluster takes the
// action with the best mean QoE among members collected near that action.
// Ties pick the smaller queue limit. Throws Error(kInsufficientData) when
// fewer experiences than clusters or a cluster cannot be labeled.
ExpertTable BuildExpert(const std::vector<Experience>& experiences, int k,
                        const QoEWeights& weights, uint64_t seed);

// Nearest-centroid lookup in z-scored space; ties pick the lower cluster
// index.
int ExpertActionIndex(const ExpertTable& table,
                      const HandoverFeatures& features);

inline int ExpertActionMs(const ExpertTable& table,
                          const HandoverFeatures& features) {
  return kActionsMs[ExpertActionIndex(table, features)];
}

void SaveExpertTable(const ExpertTable& table, const std::string& path);
ExpertTable LoadExpertTable(const std::string& path);

}  // namespace policy
}  // namespace leortc

#endif  // LEORTC_POLICY_EXPERT_H_
