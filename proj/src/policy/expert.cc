#include "leortc/policy/expert.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "leortc/common/error.h"
#include "leortc/common/rng.h"
#include "leortc/policy/tensor_store.h"

namespace leortc {
namespace policy {

namespace {

constexpr int kMaxLloydIterations = 300;

using Point = std::array<double, 2>;

double Dist2(const Point& a, const Point& b) {
  double dx = a[0] - b[0], dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

int Nearest(const std::vector<Point>& centroids, const Point& p) {
  int best = 0;
  double best_d = Dist2(centroids[0], p);
  for (size_t i = 1; i < centroids.size(); ++i) {
    double d = Dist2(centroids[i], p);
    if (d < best_d) {
      best = static_cast<int>(i);
      best_d = d;
    }
  }
  return best;
}

// k-means++ seeding: first centroid uniform, the rest proportional to the
// squared distance from the nearest chosen centroid.
std::vector<Point> SeedCentroids(const std::vector<Point>& points, int k,
                                 Rng& rng) {
  std::vector<Point> centroids;
  centroids.push_back(points[rng.NextIndex(points.size())]);
  std::vector<double> d2(points.size());
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
      d2[i] = Dist2(points[i], centroids[Nearest(centroids, points[i])]);
      total += d2[i];
    }
    if (total <= 0.0) {
      // All remaining mass on already-chosen positions; spread evenly.
      centroids.push_back(points[rng.NextIndex(points.size())]);
      continue;
    }
    double target = rng.NextDouble() * total;
    double acc = 0.0;
    size_t chosen = points.size() - 1;
    for (size_t i = 0; i < points.size(); ++i) {
      acc += d2[i];
      if (acc >= target) {
        chosen = i;
        break;
      }
    }
    centroids.push_back(points[chosen]);
  }
  return centroids;
}

}  // namespace

ExpertTable BuildExpert(const std::vector<Experience>& experiences, int k,
                        const QoEWeights& weights, uint64_t seed) {
  if (static_cast<int>(experiences.size()) < k || k < 1) {
    throw Error(ErrorCode::kInsufficientData,
                "need at least k experiences to build the expert");
  }

  ExpertTable table;
  table.k = k;

  // z-score the two features.
  std::vector<Point> points(experiences.size());
  Point mean{0.0, 0.0};
  for (size_t i = 0; i < experiences.size(); ++i) {
    HandoverFeatures f = FeaturesOf(experiences[i].state);
    points[i] = {f.total, f.per_minute};
    mean[0] += f.total;
    mean[1] += f.per_minute;
  }
  mean[0] /= points.size();
  mean[1] /= points.size();
  Point var{0.0, 0.0};
  for (const Point& p : points) {
    var[0] += (p[0] - mean[0]) * (p[0] - mean[0]);
    var[1] += (p[1] - mean[1]) * (p[1] - mean[1]);
  }
  Point stddev{std::sqrt(var[0] / points.size()),
               std::sqrt(var[1] / points.size())};
  if (stddev[0] <= 0.0) stddev[0] = 1.0;
  if (stddev[1] <= 0.0) stddev[1] = 1.0;
  for (Point& p : points) {
    p[0] = (p[0] - mean[0]) / stddev[0];
    p[1] = (p[1] - mean[1]) / stddev[1];
  }
  table.feature_mean = mean;
  table.feature_std = stddev;

  Rng rng(seed);
  std::vector<Point> centroids = SeedCentroids(points, k, rng);
  std::vector<int> assignment(points.size(), -1);

  for (int iter = 0; iter < kMaxLloydIterations; ++iter) {
    bool changed = false;
    for (size_t i = 0; i < points.size(); ++i) {
      int c = Nearest(centroids, points[i]);
      if (c != assignment[i]) {
        assignment[i] = c;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    std::vector<Point> sums(k, {0.0, 0.0});
    std::vector<int> counts(k, 0);
    for (size_t i = 0; i < points.size(); ++i) {
      sums[assignment[i]][0] += points[i][0];
      sums[assignment[i]][1] += points[i][1];
      ++counts[assignment[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Re-seed an empty cluster at the point farthest from its centroid.
        size_t far = 0;
        double far_d = -1.0;
        for (size_t i = 0; i < points.size(); ++i) {
          double d = Dist2(points[i], centroids[assignment[i]]);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centroids[c] = points[far];
        changed = true;
      } else {
        centroids[c] = {sums[c][0] / counts[c], sums[c][1] / counts[c]};
      }
    }
    if (!changed) break;
  }
  table.centroids = centroids;

  // Label each cluster with the action whose members scored the best mean
  // QoE; collection-time limits map to their nearest action first.
  table.labels.assign(k, -1);
  for (int c = 0; c < k; ++c) {
    std::array<double, kNumActions> sum{};
    std::array<int, kNumActions> count{};
    for (size_t i = 0; i < experiences.size(); ++i) {
      if (assignment[i] != c) continue;
      int a = NearestActionIndex(experiences[i].action_queue_ms);
      sum[a] += Qoe(experiences[i].R, experiences[i].F, weights);
      ++count[a];
    }
    int best = -1;
    double best_mean = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < kNumActions; ++a) {
      if (count[a] == 0) continue;
      double m = sum[a] / count[a];
      if (m > best_mean) {  // strict: ties keep the smaller queue limit
        best = a;
        best_mean = m;
      }
    }
    if (best < 0) {
      throw Error(ErrorCode::kInsufficientData,
                  "cluster " + std::to_string(c) +
                      " has no samples under any action");
    }
    table.labels[c] = best;
  }
  return table;
}

int ExpertActionIndex(const ExpertTable& table,
                      const HandoverFeatures& features) {
  Point p = {(features.total - table.feature_mean[0]) / table.feature_std[0],
             (features.per_minute - table.feature_mean[1]) /
                 table.feature_std[1]};
  int best = 0;
  double best_d = Dist2(table.centroids[0], p);
  for (size_t i = 1; i < table.centroids.size(); ++i) {
    double d = Dist2(table.centroids[i], p);
    if (d < best_d) {
      best = static_cast<int>(i);
      best_d = d;
    }
  }
  return table.labels[best];
}

void SaveExpertTable(const ExpertTable& table, const std::string& path) {
  TensorStore store;
  store.scalars["k"] = static_cast<double>(table.k);
  store.scalars["feature_mean_total"] = table.feature_mean[0];
  store.scalars["feature_mean_per_minute"] = table.feature_mean[1];
  store.scalars["feature_std_total"] = table.feature_std[0];
  store.scalars["feature_std_per_minute"] = table.feature_std[1];

  std::vector<float> centroid_data;
  for (const auto& c : table.centroids) {
    centroid_data.push_back(static_cast<float>(c[0]));
    centroid_data.push_back(static_cast<float>(c[1]));
  }
  store.Add("centroids", {table.k, 2}, centroid_data);
  std::vector<float> label_data(table.labels.begin(), table.labels.end());
  store.Add("labels", {table.k}, label_data);
  store.Save(path);
}

ExpertTable LoadExpertTable(const std::string& path) {
  TensorStore store = TensorStore::Load(path);
  ExpertTable table;
  table.k = static_cast<int>(store.scalars.at("k"));
  table.feature_mean = {store.scalars.at("feature_mean_total"),
                        store.scalars.at("feature_mean_per_minute")};
  table.feature_std = {store.scalars.at("feature_std_total"),
                       store.scalars.at("feature_std_per_minute")};
  const Tensor& centroids = store.Get("centroids", {table.k, 2});
  for (int c = 0; c < table.k; ++c) {
    table.centroids.push_back(
        {centroids.data[c * 2], centroids.data[c * 2 + 1]});
  }
  const Tensor& labels = store.Get("labels", {table.k});
  for (float l : labels.data) table.labels.push_back(static_cast<int>(l));
  return table;
}

}  // namespace policy
}  // namespace leortc
