#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "signbridge/recognizer/landmarks.hpp"

namespace signbridge::recognizer {

struct SynthConfig {
  std::size_t classes = 10;
  std::size_t per_class = 200;
  std::uint64_t seed = 7;
  // Multiplies every per-sample perturbation; 0 reproduces the class templates.
  double jitter = 1.0;
};

/// Labels for a synthetic run: the reference phrases first, then "class-NN".
std::vector<std::string> synthetic_labels(std::size_t classes);

/// Labelled frames grouped by class in id order. Each class is a fixed hand
/// pose template (finger curls, spread, tilt; some classes use both hands)
/// that does not depend on the seed; the seed drives per-sample placement,
/// scale, rotation, pose wobble and landmark noise.
std::vector<LandmarkFrame> synthesize_frames(const SynthConfig& config);

}  // namespace signbridge::recognizer
