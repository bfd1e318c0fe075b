#ifndef LEORTC_POLICY_TRAIN_H_
#define LEORTC_POLICY_TRAIN_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "leortc/policy/transformer.h"

namespace leortc {
namespace policy {

struct TrainConfig {
  int epochs = 100;
  int batch_size = 128;
  double learning_rate = 1e-3;
  double weight_decay = 0.01;  // decoupled
  double dropout = 0.1;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  bool cosine_schedule = true;  // anneal lr to 0 over `epochs`
  int cv_folds = 5;             // 0 or 1 skips cross-validation
  uint64_t seed = 1;
  int threads = 2;
};

struct TrainLogRow {
  int epoch = 0;
  int fold = -1;  // -1 marks the final full-data fit
  double train_loss = 0.0;
  double val_accuracy = 0.0;  // NaN when the fold has no held-out split
  double learning_rate = 0.0;
};

struct TrainResult {
  PolicyWeights weights;  // final full-data fit
  std::vector<TrainLogRow> log;
  std::vector<double> fold_accuracy;  // one entry per CV fold
};

// Minimizes cross-entropy between the policy's logits and expert action
// labels with AdamW and seeded batch shuffling. Per-fold validation
// accuracy is logged when cv_folds > 1; the returned weights always come
// from a final fit on the full dataset. Gradients accumulate into a fixed
// number of sample partitions reduced in order, so results are
// bit-identical for a fixed seed regardless of thread count.
// Throws Error(kEmptyDataset) and Error(kDivergedLoss).
TrainResult Train(const std::vector<SegmentState>& states,
                  const std::vector<int>& labels, const ModelConfig& arch,
                  const TrainConfig& config);

// Fraction of states where the policy argmax matches the label.
double Agreement(const PolicyWeights& weights,
                 const std::vector<SegmentState>& states,
                 const std::vector<int>& labels,
                 const std::vector<int>& indices);

void WriteTrainingLogCsv(const std::vector<TrainLogRow>& log,
                         std::ostream& out);

}  // namespace policy
}  // namespace leortc

#endif  // LEORTC_POLICY_TRAIN_H_
