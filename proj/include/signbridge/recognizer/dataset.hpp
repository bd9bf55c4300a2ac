#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "signbridge/recognizer/landmarks.hpp"

namespace signbridge::recognizer {

/// The ten phrases of the reference vocabulary, in class-id order.
const std::vector<std::string>& default_sign_labels();

struct LabeledSample {
  FeatureVector features{};
  std::size_t label = 0;
};

struct LandmarkDataset {
  std::vector<std::string> classes;
  std::vector<LabeledSample> samples;

  /// Encodes labelled frames. Class ids follow first appearance of each
  /// label, or the order of `classes` when given (unknown labels then throw).
  static LandmarkDataset from_frames(const std::vector<LandmarkFrame>& frames,
                                     std::vector<std::string> classes = {});

  std::vector<std::size_t> class_counts() const;
};

}  // namespace signbridge::recognizer
