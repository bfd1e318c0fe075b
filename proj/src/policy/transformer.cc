#include "leortc/policy/transformer.h"

#include <cmath>

#include "leortc/common/error.h"
#include "leortc/policy/tensor_store.h"

namespace leortc {
namespace policy {

namespace {

double Gelu(double x) { return 0.5 * x * (1.0 + std::erf(x * M_SQRT1_2)); }

double GeluGrad(double x) {
  double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  return 0.5 * (1.0 + std::erf(x * M_SQRT1_2)) + x * phi;
}

Mat SinusoidalTable(int tokens, int d_model) {
  Mat table(tokens, d_model);
  for (int t = 0; t < tokens; ++t) {
    for (int i = 0; i < d_model; i += 2) {
      double angle = t / std::pow(10000.0, static_cast<double>(i) / d_model);
      table(t, i) = std::sin(angle);
      if (i + 1 < d_model) table(t, i + 1) = std::cos(angle);
    }
  }
  return table;
}

Mat XavierInit(int rows, int cols, Rng& rng) {
  double limit = std::sqrt(6.0 / (rows + cols));
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      m(r, c) = rng.NextDouble(-limit, limit);
    }
  }
  return m;
}

// Row-wise layer norm together with the cache backward needs.
struct LnCache {
  Mat xhat;              // normalized rows
  Eigen::VectorXd istd;  // 1/std per row
};

Mat LayerNorm(const Mat& x, const Mat& gamma, const Mat& beta, LnCache* cache) {
  const int rows = static_cast<int>(x.rows());
  const int cols = static_cast<int>(x.cols());
  Mat out(rows, cols);
  if (cache) {
    cache->xhat.resize(rows, cols);
    cache->istd.resize(rows);
  }
  for (int r = 0; r < rows; ++r) {
    double mean = x.row(r).mean();
    double var = (x.row(r).array() - mean).square().mean();
    double istd = 1.0 / std::sqrt(var + 1e-5);
    auto xhat = ((x.row(r).array() - mean) * istd).matrix();
    out.row(r) =
        (xhat.array() * gamma.row(0).array() + beta.row(0).array()).matrix();
    if (cache) {
      cache->xhat.row(r) = xhat;
      cache->istd(r) = istd;
    }
  }
  return out;
}

// dL/dx for layer norm; accumulates dgamma/dbeta.
Mat LayerNormBackward(const Mat& dy, const LnCache& cache, const Mat& gamma,
                      Mat& dgamma, Mat& dbeta) {
  const int rows = static_cast<int>(dy.rows());
  const int cols = static_cast<int>(dy.cols());
  Mat dx(rows, cols);
  for (int r = 0; r < rows; ++r) {
    auto dyr = dy.row(r).array();
    auto xh = cache.xhat.row(r).array();
    dgamma.row(0).array() += dyr * xh;
    dbeta.row(0).array() += dyr;
    auto dxhat = dyr * gamma.row(0).array();
    double m1 = dxhat.mean();
    double m2 = (dxhat * xh).mean();
    dx.row(r) = (cache.istd(r) * (dxhat - m1 - xh * m2)).matrix();
  }
  return dx;
}

Mat SoftmaxRows(const Mat& scores) {
  Mat out(scores.rows(), scores.cols());
  for (int r = 0; r < scores.rows(); ++r) {
    double mx = scores.row(r).maxCoeff();
    Eigen::ArrayXd e = (scores.row(r).array() - mx).exp();
    out.row(r) = (e / e.sum()).matrix();
  }
  return out;
}

// Inverted-dropout mask: entries are 0 or 1/(1-p).
Mat DropoutMask(int rows, int cols, double p, Rng& rng) {
  Mat mask(rows, cols);
  double scale = 1.0 / (1.0 - p);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      mask(r, c) = rng.NextDouble() < p ? 0.0 : scale;
    }
  }
  return mask;
}

struct LayerCache {
  Mat z_in;  // residual stream entering the layer
  LnCache ln1;
  Mat n1;
  Mat q, k, v;
  std::vector<Mat> attn_probs;  // per head, tokens x tokens
  std::vector<Mat> attn_mask;   // per head dropout masks (empty in eval)
  Mat attn_concat;              // heads concatenated, tokens x d
  Mat attn_out_mask;            // tokens x d (empty in eval)
  Mat z_mid;
  LnCache ln2;
  Mat n2;
  Mat ff_pre;          // tokens x dff, pre-activation
  Mat ff_act_dropped;  // tokens x dff, after GELU and dropout
  Mat ff_hidden_mask;
  Mat ff_out_mask;
};

struct ForwardCache {
  Mat tokens;
  Mat token_hidden_pre;  // tokens x d before GELU
  Mat embedded;          // tokens x d after token MLP (pre positional)
  std::vector<LayerCache> layers;
  Mat z_final;
  Eigen::RowVectorXd pooled;
  std::vector<double> logits;
};

void CheckShapes(const PolicyWeights& w) {
  const ModelConfig& c = w.config;
  bool ok = w.token_w1.rows() == c.input_dim && w.token_w1.cols() == c.d_model &&
            w.token_w2.rows() == c.d_model && w.token_w2.cols() == c.d_model &&
            w.positional.rows() == c.tokens &&
            w.positional.cols() == c.d_model &&
            static_cast<int>(w.layers.size()) == c.num_layers &&
            w.head_w.rows() == c.d_model && w.head_w.cols() == c.num_classes &&
            c.d_model % c.num_heads == 0;
  for (const LayerWeights& lw : w.layers) {
    ok = ok && lw.wq.rows() == c.d_model && lw.w1.cols() == c.d_ff &&
         lw.w2.rows() == c.d_ff && lw.w2.cols() == c.d_model;
  }
  if (!ok) {
    throw Error(ErrorCode::kShapeMismatch, "inconsistent policy weights");
  }
}

// Runs the encoder; dropout applies only when dropout > 0 and rng given.
void RunForward(const PolicyWeights& w, const Mat& tokens, double dropout,
                Rng* rng, ForwardCache& cache) {
  const ModelConfig& c = w.config;
  const int T = static_cast<int>(tokens.rows());
  const int dh = c.head_dim();
  const double inv_sqrt_dh = 1.0 / std::sqrt(static_cast<double>(dh));
  const bool use_dropout = dropout > 0.0 && rng != nullptr;

  cache.tokens = tokens;
  cache.token_hidden_pre =
      (tokens * w.token_w1).rowwise() + w.token_b1.row(0);
  Mat hidden = cache.token_hidden_pre.unaryExpr([](double x) {
    return Gelu(x);
  });
  cache.embedded = (hidden * w.token_w2).rowwise() + w.token_b2.row(0);

  Mat z = cache.embedded + w.positional.topRows(T);
  cache.layers.clear();
  cache.layers.resize(c.num_layers);

  for (int l = 0; l < c.num_layers; ++l) {
    LayerCache& lc = cache.layers[l];
    const LayerWeights& lw = w.layers[l];
    lc.z_in = z;

    lc.n1 = LayerNorm(z, lw.ln1_gamma, lw.ln1_beta, &lc.ln1);
    lc.q = (lc.n1 * lw.wq).rowwise() + lw.bq.row(0);
    lc.k = (lc.n1 * lw.wk).rowwise() + lw.bk.row(0);
    lc.v = (lc.n1 * lw.wv).rowwise() + lw.bv.row(0);

    lc.attn_concat.resize(T, c.d_model);
    lc.attn_probs.resize(c.num_heads);
    lc.attn_mask.resize(c.num_heads);
    for (int h = 0; h < c.num_heads; ++h) {
      auto qh = lc.q.block(0, h * dh, T, dh);
      auto kh = lc.k.block(0, h * dh, T, dh);
      auto vh = lc.v.block(0, h * dh, T, dh);
      Mat scores = qh * kh.transpose() * inv_sqrt_dh;
      lc.attn_probs[h] = SoftmaxRows(scores);
      if (use_dropout) {
        lc.attn_mask[h] = DropoutMask(T, T, dropout, *rng);
        lc.attn_concat.block(0, h * dh, T, dh) =
            (lc.attn_probs[h].cwiseProduct(lc.attn_mask[h])) * vh;
      } else {
        lc.attn_concat.block(0, h * dh, T, dh) = lc.attn_probs[h] * vh;
      }
    }
    Mat attn_out = (lc.attn_concat * lw.wo).rowwise() + lw.bo.row(0);
    if (use_dropout) {
      lc.attn_out_mask = DropoutMask(T, c.d_model, dropout, *rng);
      attn_out = attn_out.cwiseProduct(lc.attn_out_mask);
    }
    lc.z_mid = z + attn_out;

    lc.n2 = LayerNorm(lc.z_mid, lw.ln2_gamma, lw.ln2_beta, &lc.ln2);
    lc.ff_pre = (lc.n2 * lw.w1).rowwise() + lw.b1.row(0);
    Mat act = lc.ff_pre.unaryExpr([](double x) { return Gelu(x); });
    if (use_dropout) {
      lc.ff_hidden_mask = DropoutMask(T, c.d_ff, dropout, *rng);
      act = act.cwiseProduct(lc.ff_hidden_mask);
    }
    lc.ff_act_dropped = act;
    Mat ff_out = (act * lw.w2).rowwise() + lw.b2.row(0);
    if (use_dropout) {
      lc.ff_out_mask = DropoutMask(T, c.d_model, dropout, *rng);
      ff_out = ff_out.cwiseProduct(lc.ff_out_mask);
    }
    z = lc.z_mid + ff_out;
  }

  cache.z_final = z;
  cache.pooled = z.colwise().mean();
  Eigen::RowVectorXd logits = cache.pooled * w.head_w + w.head_b.row(0);
  cache.logits.assign(logits.data(), logits.data() + logits.size());
}

}  // namespace

PolicyWeights PolicyWeights::Init(const ModelConfig& config, uint64_t seed) {
  Rng rng(seed);
  PolicyWeights w;
  w.config = config;
  w.token_w1 = XavierInit(config.input_dim, config.d_model, rng);
  w.token_b1 = Mat::Zero(1, config.d_model);
  w.token_w2 = XavierInit(config.d_model, config.d_model, rng);
  w.token_b2 = Mat::Zero(1, config.d_model);
  w.positional = SinusoidalTable(config.tokens, config.d_model);
  for (int l = 0; l < config.num_layers; ++l) {
    LayerWeights lw;
    lw.ln1_gamma = Mat::Ones(1, config.d_model);
    lw.ln1_beta = Mat::Zero(1, config.d_model);
    lw.wq = XavierInit(config.d_model, config.d_model, rng);
    lw.wk = XavierInit(config.d_model, config.d_model, rng);
    lw.wv = XavierInit(config.d_model, config.d_model, rng);
    lw.wo = XavierInit(config.d_model, config.d_model, rng);
    lw.bq = Mat::Zero(1, config.d_model);
    lw.bk = Mat::Zero(1, config.d_model);
    lw.bv = Mat::Zero(1, config.d_model);
    lw.bo = Mat::Zero(1, config.d_model);
    lw.ln2_gamma = Mat::Ones(1, config.d_model);
    lw.ln2_beta = Mat::Zero(1, config.d_model);
    lw.w1 = XavierInit(config.d_model, config.d_ff, rng);
    lw.b1 = Mat::Zero(1, config.d_ff);
    lw.w2 = XavierInit(config.d_ff, config.d_model, rng);
    lw.b2 = Mat::Zero(1, config.d_model);
    w.layers.push_back(std::move(lw));
  }
  w.head_w = XavierInit(config.d_model, config.num_classes, rng);
  w.head_b = Mat::Zero(1, config.num_classes);
  return w;
}

PolicyWeights PolicyWeights::Zeros(const ModelConfig& config) {
  PolicyWeights w = Init(config, 0);
  w.ForEachParam([](const std::string&, Mat& m) { m.setZero(); });
  w.positional.setZero();
  return w;
}

bool PolicyWeights::Finite() const {
  bool finite = true;
  const_cast<PolicyWeights*>(this)->ForEachParam(
      [&](const std::string&, Mat& m) {
        if (!m.allFinite()) finite = false;
      });
  return finite && positional.allFinite();
}

Mat BuildTokens(const SegmentState& state) {
  Mat tokens(kSegmentSeconds, 2);
  for (int t = 0; t < kSegmentSeconds; ++t) {
    tokens(t, 0) = state.h[t];
    tokens(t, 1) = state.t_norm[t];
  }
  return tokens;
}

std::vector<double> ForwardLogitsTokens(const PolicyWeights& weights,
                                        const Mat& tokens) {
  CheckShapes(weights);
  ForwardCache cache;
  RunForward(weights, tokens, 0.0, nullptr, cache);
  return cache.logits;
}

std::array<double, 4> ForwardLogits(const PolicyWeights& weights,
                                    const SegmentState& state) {
  std::vector<double> logits = ForwardLogitsTokens(weights, BuildTokens(state));
  if (logits.size() != 4) {
    throw Error(ErrorCode::kShapeMismatch, "head does not emit 4 logits");
  }
  return {logits[0], logits[1], logits[2], logits[3]};
}

std::vector<double> Softmax(const std::vector<double>& logits) {
  double mx = logits[0];
  for (double v : logits) mx = std::max(mx, v);
  double sum = 0.0;
  std::vector<double> out(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - mx);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

int ArgmaxLogits(const std::array<double, 4>& logits) {
  int best = 0;
  for (int i = 1; i < 4; ++i) {
    if (logits[i] > logits[best]) best = i;  // strict: ties keep lower index
  }
  return best;
}

int InferActionIndex(const PolicyWeights& weights, const SegmentState& state) {
  return ArgmaxLogits(ForwardLogits(weights, state));
}

double ForwardBackward(const PolicyWeights& w, const Mat& tokens, int label,
                       double dropout, Rng* dropout_rng, PolicyWeights& grad) {
  const ModelConfig& c = w.config;
  const int T = static_cast<int>(tokens.rows());
  const int dh = c.head_dim();
  const double inv_sqrt_dh = 1.0 / std::sqrt(static_cast<double>(dh));

  ForwardCache cache;
  RunForward(w, tokens, dropout, dropout_rng, cache);

  std::vector<double> probs = Softmax(cache.logits);
  double loss = -std::log(std::max(probs[label], 1e-300));

  Eigen::RowVectorXd dlogits(c.num_classes);
  for (int i = 0; i < c.num_classes; ++i) {
    dlogits(i) = probs[i] - (i == label ? 1.0 : 0.0);
  }

  // Head and mean pooling.
  grad.head_w += cache.pooled.transpose() * dlogits;
  grad.head_b.row(0) += dlogits;
  Eigen::RowVectorXd dpooled = dlogits * w.head_w.transpose();
  Mat dz = Mat::Zero(T, c.d_model);
  dz.rowwise() += dpooled / static_cast<double>(T);

  for (int l = c.num_layers - 1; l >= 0; --l) {
    const LayerCache& lc = cache.layers[l];
    const LayerWeights& lw = w.layers[l];
    LayerWeights& gl = grad.layers[l];
    const bool used_dropout = lc.attn_out_mask.size() > 0;

    // Feed-forward sublayer: z = z_mid + drop(W2 * drop(gelu(W1* n2)))
    Mat dff_out = dz;
    if (used_dropout) dff_out = dff_out.cwiseProduct(lc.ff_out_mask);
    gl.w2 += lc.ff_act_dropped.transpose() * dff_out;
    gl.b2.row(0) += dff_out.colwise().sum();
    Mat dact = dff_out * lw.w2.transpose();
    if (used_dropout) dact = dact.cwiseProduct(lc.ff_hidden_mask);
    Mat dff_pre =
        dact.cwiseProduct(lc.ff_pre.unaryExpr([](double x) {
          return GeluGrad(x);
        }));
    gl.w1 += lc.n2.transpose() * dff_pre;
    gl.b1.row(0) += dff_pre.colwise().sum();
    Mat dn2 = dff_pre * lw.w1.transpose();
    Mat dz_mid =
        dz + LayerNormBackward(dn2, lc.ln2, lw.ln2_gamma, gl.ln2_gamma,
                               gl.ln2_beta);

    // Attention sublayer: z_mid = z_in + drop(concat(heads) * Wo)
    Mat dattn_out = dz_mid;
    if (used_dropout) dattn_out = dattn_out.cwiseProduct(lc.attn_out_mask);
    gl.wo += lc.attn_concat.transpose() * dattn_out;
    gl.bo.row(0) += dattn_out.colwise().sum();
    Mat dconcat = dattn_out * lw.wo.transpose();

    Mat dq = Mat::Zero(T, c.d_model);
    Mat dk = Mat::Zero(T, c.d_model);
    Mat dv = Mat::Zero(T, c.d_model);
    for (int h = 0; h < c.num_heads; ++h) {
      auto qh = lc.q.block(0, h * dh, T, dh);
      auto kh = lc.k.block(0, h * dh, T, dh);
      auto vh = lc.v.block(0, h * dh, T, dh);
      auto doh = dconcat.block(0, h * dh, T, dh);
      const Mat& probs_h = lc.attn_probs[h];

      Mat probs_used = probs_h;
      if (used_dropout) probs_used = probs_h.cwiseProduct(lc.attn_mask[h]);

      dv.block(0, h * dh, T, dh) = probs_used.transpose() * doh;
      Mat dprobs_used = doh * vh.transpose();
      if (used_dropout) dprobs_used = dprobs_used.cwiseProduct(lc.attn_mask[h]);

      // Softmax backward per row.
      Mat dscores(T, T);
      for (int r = 0; r < T; ++r) {
        double dot = dprobs_used.row(r).dot(probs_h.row(r));
        dscores.row(r) =
            (probs_h.row(r).array() * (dprobs_used.row(r).array() - dot))
                .matrix();
      }
      dscores *= inv_sqrt_dh;
      dq.block(0, h * dh, T, dh) = dscores * kh;
      dk.block(0, h * dh, T, dh) = dscores.transpose() * qh;
    }

    gl.wq += lc.n1.transpose() * dq;
    gl.bq.row(0) += dq.colwise().sum();
    gl.wk += lc.n1.transpose() * dk;
    gl.bk.row(0) += dk.colwise().sum();
    gl.wv += lc.n1.transpose() * dv;
    gl.bv.row(0) += dv.colwise().sum();
    Mat dn1 =
        dq * lw.wq.transpose() + dk * lw.wk.transpose() + dv * lw.wv.transpose();
    dz = dz_mid + LayerNormBackward(dn1, lc.ln1, lw.ln1_gamma, gl.ln1_gamma,
                                    gl.ln1_beta);
  }

  // Token MLP.
  Mat dembedded = dz;  // positional table is fixed
  grad.token_w2 +=
      cache.token_hidden_pre.unaryExpr([](double x) { return Gelu(x); })
          .transpose() *
      dembedded;
  grad.token_b2.row(0) += dembedded.colwise().sum();
  Mat dhidden = dembedded * w.token_w2.transpose();
  Mat dhidden_pre = dhidden.cwiseProduct(
      cache.token_hidden_pre.unaryExpr([](double x) { return GeluGrad(x); }));
  grad.token_w1 += cache.tokens.transpose() * dhidden_pre;
  grad.token_b1.row(0) += dhidden_pre.colwise().sum();

  return loss;
}

void SavePolicyWeights(const PolicyWeights& weights, const std::string& path) {
  TensorStore store;
  const ModelConfig& c = weights.config;
  store.scalars["tokens"] = c.tokens;
  store.scalars["input_dim"] = c.input_dim;
  store.scalars["d_model"] = c.d_model;
  store.scalars["num_layers"] = c.num_layers;
  store.scalars["num_heads"] = c.num_heads;
  store.scalars["d_ff"] = c.d_ff;
  store.scalars["num_classes"] = c.num_classes;

  auto add = [&](const std::string& name, const Mat& m) {
    std::vector<float> data(m.size());
    for (int r = 0; r < m.rows(); ++r) {
      for (int col = 0; col < m.cols(); ++col) {
        data[r * m.cols() + col] = static_cast<float>(m(r, col));
      }
    }
    store.Add(name, {static_cast<int>(m.rows()), static_cast<int>(m.cols())},
              std::move(data));
  };
  const_cast<PolicyWeights&>(weights).ForEachParam(
      [&](const std::string& name, Mat& m) { add(name, m); });
  add("positional", weights.positional);
  store.Save(path);
}

PolicyWeights LoadPolicyWeights(const std::string& path) {
  TensorStore store = TensorStore::Load(path);
  ModelConfig c;
  c.tokens = static_cast<int>(store.scalars.at("tokens"));
  c.input_dim = static_cast<int>(store.scalars.at("input_dim"));
  c.d_model = static_cast<int>(store.scalars.at("d_model"));
  c.num_layers = static_cast<int>(store.scalars.at("num_layers"));
  c.num_heads = static_cast<int>(store.scalars.at("num_heads"));
  c.d_ff = static_cast<int>(store.scalars.at("d_ff"));
  c.num_classes = static_cast<int>(store.scalars.at("num_classes"));

  PolicyWeights w = PolicyWeights::Zeros(c);
  auto load = [&](const std::string& name, Mat& m) {
    const Tensor& t = store.Get(
        name, {static_cast<int>(m.rows()), static_cast<int>(m.cols())});
    for (int r = 0; r < m.rows(); ++r) {
      for (int col = 0; col < m.cols(); ++col) {
        m(r, col) = t.data[r * m.cols() + col];
      }
    }
  };
  w.ForEachParam([&](const std::string& name, Mat& m) { load(name, m); });
  load("positional", w.positional);
  if (!w.Finite()) {
    throw Error(ErrorCode::kShapeMismatch,
                "loaded policy weights contain non-finite values");
  }
  return w;
}

}  // namespace policy
}  // namespace leortc
