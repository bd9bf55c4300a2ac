#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "signbridge/recognizer/landmarks.hpp"
#include "signbridge/recognizer/mlp.hpp"

namespace signbridge::recognizer {

struct Prediction {
  std::size_t class_id = 0;
  std::string label;
  double confidence = 0.0;

  bool operator==(const Prediction&) const = default;
};

/// Index of the largest value; the lowest index wins ties.
std::size_t argmax(std::span<const double> values);

Prediction predict_features(const MlpModel& model, const FeatureVector& features);

/// Throws InvalidFrame for malformed frames. A frame without hands is
/// classified from the all-zero vector.
Prediction predict(const MlpModel& model, const LandmarkFrame& frame);

/// Most frequent class over the predictions (lowest id on ties) and the mean
/// confidence of the predictions that voted for it. Requires a non-empty list.
Prediction majority_vote(std::span<const Prediction> predictions);

}  // namespace signbridge::recognizer
