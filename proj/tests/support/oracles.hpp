#pragma once

// Reference computations that deliberately avoid the library's own code paths.

#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "signbridge/recognizer/dataset.hpp"
#include "signbridge/recognizer/landmarks.hpp"
#include "signbridge/recognizer/mlp.hpp"

namespace signbridge::testing {

// Plain re-derivation of the network's mean cross-entropy: dense layers,
// rectifier, log-sum-exp.
inline double reference_loss(const recognizer::MlpModel& model,
                             const std::vector<std::vector<double>>& inputs,
                             const std::vector<std::size_t>& labels) {
  double total = 0.0;
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    std::vector<double> act = inputs[s];
    const auto& layers = model.layers();
    for (std::size_t li = 0; li < layers.size(); ++li) {
      const auto& L = layers[li];
      std::vector<double> next(L.outputs);
      for (std::size_t r = 0; r < L.outputs; ++r) {
        long double acc = L.bias[r];
        for (std::size_t c = 0; c < L.inputs; ++c) {
          acc += static_cast<long double>(L.weights[r * L.inputs + c]) * act[c];
        }
        next[r] = static_cast<double>(acc);
        if (li + 1 < layers.size() && next[r] < 0.0) next[r] = 0.0;
      }
      act = std::move(next);
    }
    double max = -std::numeric_limits<double>::infinity();
    for (double v : act) max = std::max(max, v);
    long double sum = 0.0;
    for (double v : act) sum += std::exp(static_cast<long double>(v - max));
    total += static_cast<double>(std::log(sum)) + max - act[labels[s]];
  }
  return total / static_cast<double>(inputs.size());
}

// Central differences of reference_loss for every parameter, flattened in
// layer order (weights then biases per layer).
inline std::vector<double> finite_difference_gradient(recognizer::MlpModel model,
                                                      const std::vector<std::vector<double>>& inputs,
                                                      const std::vector<std::size_t>& labels,
                                                      double step = 1e-5) {
  std::vector<double> grad;
  auto probe = [&](double& param) {
    const double saved = param;
    param = saved + step;
    const double up = reference_loss(model, inputs, labels);
    param = saved - step;
    const double down = reference_loss(model, inputs, labels);
    param = saved;
    grad.push_back((up - down) / (2.0 * step));
  };
  for (auto& layer : model.layers()) {
    for (auto& w : layer.weights) probe(w);
    for (auto& b : layer.bias) probe(b);
  }
  return grad;
}

inline std::vector<double> flatten(const recognizer::Gradients& g) {
  std::vector<double> out;
  for (std::size_t li = 0; li < g.weights.size(); ++li) {
    out.insert(out.end(), g.weights[li].begin(), g.weights[li].end());
    out.insert(out.end(), g.bias[li].begin(), g.bias[li].end());
  }
  return out;
}

// ||a - b|| / max(||a||, ||b||), 0 when both vanish.
inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double denom = std::sqrt(std::max(na, nb));
  return denom == 0.0 ? 0.0 : std::sqrt(diff) / denom;
}

// Random model with normally distributed weights and biases.
inline recognizer::MlpModel random_model(const std::vector<std::size_t>& dims, std::mt19937_64& rng,
                                         double stddev = 0.8) {
  std::vector<std::string> classes;
  for (std::size_t i = 0; i < dims.back(); ++i) classes.push_back("c" + std::to_string(i));
  recognizer::MlpModel model(dims, classes);
  std::normal_distribution<double> normal(0.0, stddev);
  for (auto& layer : model.layers()) {
    for (auto& w : layer.weights) w = normal(rng);
    for (auto& b : layer.bias) b = normal(rng);
  }
  return model;
}

// Nearest class centroid (squared Euclidean), centroids fit on `fit`.
inline std::vector<std::size_t> nearest_centroid_labels(const recognizer::LandmarkDataset& ds,
                                                        const std::vector<std::size_t>& fit,
                                                        const std::vector<std::size_t>& query) {
  const auto k = ds.classes.size();
  std::vector<std::vector<double>> centroid(k, std::vector<double>(recognizer::kFeatureSize, 0.0));
  std::vector<double> count(k, 0.0);
  for (auto i : fit) {
    const auto& s = ds.samples[i];
    for (std::size_t d = 0; d < recognizer::kFeatureSize; ++d) centroid[s.label][d] += s.features[d];
    count[s.label] += 1.0;
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (auto& v : centroid[c]) v /= std::max(count[c], 1.0);
  }
  std::vector<std::size_t> out;
  for (auto i : query) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      double d = 0.0;
      for (std::size_t j = 0; j < recognizer::kFeatureSize; ++j) {
        const double e = ds.samples[i].features[j] - centroid[c][j];
        d += e * e;
      }
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    out.push_back(best);
  }
  return out;
}

// Coordinates on a 2^-16 grid keep sums, differences and power-of-two scaling
// exact in binary floating point.
inline double dyadic(std::mt19937_64& rng, int lo, int hi) {
  return static_cast<double>(std::uniform_int_distribution<int>(lo, hi)(rng)) / 65536.0;
}

inline recognizer::LandmarkFrame random_dyadic_frame(std::mt19937_64& rng) {
  recognizer::LandmarkFrame frame;
  const int mode = static_cast<int>(rng() % 4);  // 0 none, 1 left, 2 right, 3 both
  for (auto side : {recognizer::Handedness::Left, recognizer::Handedness::Right}) {
    const bool want = side == recognizer::Handedness::Left ? (mode & 1) : (mode & 2);
    if (!want) continue;
    recognizer::Hand hand;
    hand.handedness = side;
    for (std::size_t i = 0; i < recognizer::kPointsPerHand; ++i) {
      hand.points.push_back({dyadic(rng, 0, 65536), dyadic(rng, 0, 65536)});
    }
    frame.hands.push_back(std::move(hand));
  }
  return frame;
}

}  // namespace signbridge::testing
