#include "leortc/policy/train.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "leortc/common/error.h"

namespace leortc {
namespace policy {

namespace {

// Fixed number of gradient partitions; the reduction order never depends
// on the thread count.
constexpr int kGradPartitions = 16;

class AdamW {
 public:
  AdamW(PolicyWeights& weights, const TrainConfig& config)
      : config_(config),
        m_(PolicyWeights::Zeros(weights.config)),
        v_(PolicyWeights::Zeros(weights.config)) {}

  void Step(PolicyWeights& weights, PolicyWeights& grad, double lr) {
    ++t_;
    double bc1 = 1.0 - std::pow(config_.adam_beta1, t_);
    double bc2 = 1.0 - std::pow(config_.adam_beta2, t_);

    std::vector<Mat*> wp, gp, mp, vp;
    weights.ForEachParam([&](const std::string&, Mat& m) { wp.push_back(&m); });
    grad.ForEachParam([&](const std::string&, Mat& m) { gp.push_back(&m); });
    m_.ForEachParam([&](const std::string&, Mat& m) { mp.push_back(&m); });
    v_.ForEachParam([&](const std::string&, Mat& m) { vp.push_back(&m); });

    for (size_t i = 0; i < wp.size(); ++i) {
      Mat& w = *wp[i];
      Mat& g = *gp[i];
      Mat& m = *mp[i];
      Mat& v = *vp[i];
      m = config_.adam_beta1 * m + (1.0 - config_.adam_beta1) * g;
      v = (config_.adam_beta2 * v.array() +
           (1.0 - config_.adam_beta2) * g.array().square())
              .matrix();
      Mat mhat = m / bc1;
      Mat vhat = v / bc2;
      w.array() -=
          lr * (mhat.array() / (vhat.array().sqrt() + config_.adam_eps) +
                config_.weight_decay * w.array());
    }
  }

 private:
  TrainConfig config_;
  PolicyWeights m_, v_;
  int64_t t_ = 0;
};

struct EpochStats {
  double mean_loss = 0.0;
};

// One epoch of mini-batch AdamW over the given sample indices.
EpochStats RunEpoch(PolicyWeights& weights, AdamW& adam,
                    const std::vector<Mat>& tokens,
                    const std::vector<int>& labels,
                    std::vector<int> order, double lr,
                    const TrainConfig& config, uint64_t epoch_seed) {
  // Seeded shuffle.
  Rng shuffle_rng(epoch_seed);
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[shuffle_rng.NextIndex(i)]);
  }

  double loss_sum = 0.0;
  int64_t loss_count = 0;
  int threads = std::max(1, config.threads);

  for (size_t begin = 0; begin < order.size(); begin += config.batch_size) {
    size_t end = std::min(order.size(), begin + config.batch_size);
    int batch_n = static_cast<int>(end - begin);

    std::vector<PolicyWeights> partition_grads;
    partition_grads.reserve(kGradPartitions);
    for (int p = 0; p < kGradPartitions; ++p) {
      partition_grads.push_back(PolicyWeights::Zeros(weights.config));
    }
    std::vector<double> partition_loss(kGradPartitions, 0.0);

    auto worker = [&](int first_partition, int stride) {
      for (int p = first_partition; p < kGradPartitions; p += stride) {
        for (int i = p; i < batch_n; i += kGradPartitions) {
          int sample = order[begin + i];
          Rng dropout_rng(
              DeriveSeed(config.seed, epoch_seed * 1315423911ULL + begin,
                         static_cast<uint64_t>(sample)));
          partition_loss[p] += ForwardBackward(
              weights, tokens[sample], labels[sample], config.dropout,
              &dropout_rng, partition_grads[p]);
        }
      }
    };
    if (threads <= 1) {
      worker(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
      for (auto& th : pool) th.join();
    }

    // Ordered reduction: partition 0 absorbs the rest, then scale by 1/n.
    PolicyWeights& grad = partition_grads[0];
    for (int p = 1; p < kGradPartitions; ++p) {
      std::vector<Mat*> dst, src;
      grad.ForEachParam([&](const std::string&, Mat& m) { dst.push_back(&m); });
      partition_grads[p].ForEachParam(
          [&](const std::string&, Mat& m) { src.push_back(&m); });
      for (size_t i = 0; i < dst.size(); ++i) *dst[i] += *src[i];
      partition_loss[0] += partition_loss[p];
    }
    grad.ForEachParam([&](const std::string&, Mat& m) {
      m /= static_cast<double>(batch_n);
    });

    double batch_loss = partition_loss[0] / batch_n;
    if (!std::isfinite(batch_loss)) {
      throw Error(ErrorCode::kDivergedLoss,
                  "training loss became non-finite");
    }
    loss_sum += batch_loss * batch_n;
    loss_count += batch_n;

    adam.Step(weights, grad, lr);
  }
  return {loss_count > 0 ? loss_sum / loss_count : 0.0};
}

double CosineLr(const TrainConfig& config, int epoch) {
  if (!config.cosine_schedule) return config.learning_rate;
  return config.learning_rate * 0.5 *
         (1.0 + std::cos(M_PI * epoch / config.epochs));
}

PolicyWeights Fit(const std::vector<Mat>& tokens,
                  const std::vector<int>& labels,
                  const std::vector<int>& train_idx,
                  const std::vector<int>& val_idx, const ModelConfig& arch,
                  const TrainConfig& config, int fold,
                  const std::vector<SegmentState>& states,
                  std::vector<TrainLogRow>& log) {
  PolicyWeights weights =
      PolicyWeights::Init(arch, DeriveSeed(config.seed, 77, fold + 1));
  AdamW adam(weights, config);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double lr = CosineLr(config, epoch);
    EpochStats stats =
        RunEpoch(weights, adam, tokens, labels, train_idx, lr, config,
                 DeriveSeed(config.seed, fold + 100, epoch));
    TrainLogRow row;
    row.epoch = epoch;
    row.fold = fold;
    row.train_loss = stats.mean_loss;
    row.learning_rate = lr;
    row.val_accuracy = val_idx.empty()
                           ? std::numeric_limits<double>::quiet_NaN()
                           : Agreement(weights, states, labels, val_idx);
    log.push_back(row);
  }
  return weights;
}

}  // namespace

double Agreement(const PolicyWeights& weights,
                 const std::vector<SegmentState>& states,
                 const std::vector<int>& labels,
                 const std::vector<int>& indices) {
  if (indices.empty()) return 0.0;
  int hits = 0;
  for (int i : indices) {
    if (InferActionIndex(weights, states[i]) == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / indices.size();
}

TrainResult Train(const std::vector<SegmentState>& states,
                  const std::vector<int>& labels, const ModelConfig& arch,
                  const TrainConfig& config) {
  if (states.empty() || states.size() != labels.size()) {
    throw Error(ErrorCode::kEmptyDataset, "training dataset is empty");
  }
  for (int l : labels) {
    if (l < 0 || l >= arch.num_classes) {
      throw Error(ErrorCode::kEmptyDataset,
                  "label outside the action set: " + std::to_string(l));
    }
  }

  std::vector<Mat> tokens;
  tokens.reserve(states.size());
  for (const SegmentState& s : states) tokens.push_back(BuildTokens(s));

  TrainResult result;
  int n = static_cast<int>(states.size());

  if (config.cv_folds > 1 && n >= config.cv_folds) {
    // Seeded shuffle, then contiguous folds.
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Rng rng(DeriveSeed(config.seed, 42));
    for (size_t i = perm.size(); i > 1; --i) {
      std::swap(perm[i - 1], perm[rng.NextIndex(i)]);
    }
    for (int fold = 0; fold < config.cv_folds; ++fold) {
      std::vector<int> train_idx, val_idx;
      for (int i = 0; i < n; ++i) {
        if (i % config.cv_folds == fold) {
          val_idx.push_back(perm[i]);
        } else {
          train_idx.push_back(perm[i]);
        }
      }
      PolicyWeights fold_weights =
          Fit(tokens, labels, train_idx, val_idx, arch, config, fold, states,
              result.log);
      result.fold_accuracy.push_back(
          Agreement(fold_weights, states, labels, val_idx));
    }
  }

  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  result.weights =
      Fit(tokens, labels, all, {}, arch, config, -1, states, result.log);
  return result;
}

void WriteTrainingLogCsv(const std::vector<TrainLogRow>& log,
                         std::ostream& out) {
  out << "epoch,fold,train_loss,val_accuracy,learning_rate\n";
  char buf[128];
  for (const TrainLogRow& row : log) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.6f,%.6f,%.8f\n", row.epoch,
                  row.fold, row.train_loss, row.val_accuracy,
                  row.learning_rate);
    out << buf;
  }
}

}  // namespace policy
}  // namespace leortc
