#ifndef LEORTC_POLICY_TRANSFORMER_H_
#define LEORTC_POLICY_TRANSFORMER_H_

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "leortc/common/rng.h"
#include "leortc/policy/qoe.h"
#include "leortc/policy/state.h"

namespace leortc {
namespace policy {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                          Eigen::RowMajor>;

struct ModelConfig {
  int tokens = kSegmentSeconds;  // sequence length
  int input_dim = 2;             // (h_t, t_norm) per token
  int d_model = 64;
  int num_layers = 6;
  int num_heads = 4;
  int d_ff = 256;
  int num_classes = 4;

  int head_dim() const { return d_model / num_heads; }
};

struct LayerWeights {
  Mat ln1_gamma, ln1_beta;  // 1 x d
  Mat wq, wk, wv, wo;       // d x d
  Mat bq, bk, bv, bo;       // 1 x d
  Mat ln2_gamma, ln2_beta;  // 1 x d
  Mat w1, b1;               // d x dff, 1 x dff
  Mat w2, b2;               // dff x d, 1 x d
};

// Encoder parameters: token MLP (2 -> d -> d), fixed sinusoidal positional
// table, pre-LN encoder layers, mean pooling, linear classifier head.
struct PolicyWeights {
  ModelConfig config;
  Mat token_w1, token_b1;  // input_dim x d, 1 x d
  Mat token_w2, token_b2;  // d x d, 1 x d
  Mat positional;          // tokens x d, not trained
  std::vector<LayerWeights> layers;
  Mat head_w, head_b;  // d x classes, 1 x classes

  static PolicyWeights Init(const ModelConfig& config, uint64_t seed);
  // Same shapes, all zeros; used as a gradient accumulator.
  static PolicyWeights Zeros(const ModelConfig& config);

  bool Finite() const;

  // Visits every trainable tensor (the positional table is fixed).
  template <typename Fn>
  void ForEachParam(Fn&& fn) {
    fn("token_mlp.w1", token_w1);
    fn("token_mlp.b1", token_b1);
    fn("token_mlp.w2", token_w2);
    fn("token_mlp.b2", token_b2);
    for (size_t l = 0; l < layers.size(); ++l) {
      std::string p = "layers." + std::to_string(l) + ".";
      LayerWeights& lw = layers[l];
      fn(p + "ln1.gamma", lw.ln1_gamma);
      fn(p + "ln1.beta", lw.ln1_beta);
      fn(p + "attn.wq", lw.wq);
      fn(p + "attn.bq", lw.bq);
      fn(p + "attn.wk", lw.wk);
      fn(p + "attn.bk", lw.bk);
      fn(p + "attn.wv", lw.wv);
      fn(p + "attn.bv", lw.bv);
      fn(p + "attn.wo", lw.wo);
      fn(p + "attn.bo", lw.bo);
      fn(p + "ln2.gamma", lw.ln2_gamma);
      fn(p + "ln2.beta", lw.ln2_beta);
      fn(p + "ff.w1", lw.w1);
      fn(p + "ff.b1", lw.b1);
      fn(p + "ff.w2", lw.w2);
      fn(p + "ff.b2", lw.b2);
    }
    fn("head.w", head_w);
    fn("head.b", head_b);
  }
};

// Token matrix (tokens x input_dim) for a segment state.
Mat BuildTokens(const SegmentState& state);

// Deterministic inference pass (dropout off). Throws
// Error(kShapeMismatch) when the weights are internally inconsistent.
std::array<double, 4> ForwardLogits(const PolicyWeights& weights,
                                    const SegmentState& state);
std::vector<double> ForwardLogitsTokens(const PolicyWeights& weights,
                                        const Mat& tokens);

// Cross-entropy loss of one sample; accumulates parameter gradients into
// `grad`. When dropout > 0 the masks come from `dropout_rng`.
double ForwardBackward(const PolicyWeights& weights, const Mat& tokens,
                       int label, double dropout, Rng* dropout_rng,
                       PolicyWeights& grad);

// argmax over logits; ties resolve to the smaller queue limit (lower
// class index).
int InferActionIndex(const PolicyWeights& weights, const SegmentState& state);
inline int InferActionMs(const PolicyWeights& weights,
                         const SegmentState& state) {
  return kActionsMs[InferActionIndex(weights, state)];
}
int ArgmaxLogits(const std::array<double, 4>& logits);

// Numerically careful softmax (double accumulation).
std::vector<double> Softmax(const std::vector<double>& logits);

void SavePolicyWeights(const PolicyWeights& weights, const std::string& path);
PolicyWeights LoadPolicyWeights(const std::string& path);

}  // namespace policy
}  // namespace leortc

#endif  // LEORTC_POLICY_TRANSFORMER_H_
