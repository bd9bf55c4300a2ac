#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "signbridge/recognizer/classifier.hpp"

namespace signbridge::recognizer {

inline constexpr std::string_view kNoSign = "none";

struct SmootherConfig {
  std::size_t window = 5;
  std::size_t min_agreeing = 3;
  double min_mean_confidence = 0.7;
};

/// Per-stream debouncer over frame predictions. After each frame the state is
/// the label held by at least min_agreeing of the last `window` predictions
/// whose mean confidence reaches the gate, or "none". push() reports the
/// state only when it differs from the last reported one, so a steady
/// gesture yields a single emission. Not thread-safe; one per stream.
class StreamSmoother {
 public:
  explicit StreamSmoother(SmootherConfig config = {});

  std::optional<std::string> push(const Prediction& prediction);
  void reset();

 private:
  std::string current_state() const;

  SmootherConfig config_;
  std::deque<Prediction> window_;
  std::optional<std::string> last_emitted_;
};

/// Runs a fresh smoother over the whole sequence and collects its emissions.
std::vector<std::string> smooth_stream(std::span<const Prediction> predictions,
                                       SmootherConfig config = {});

}  // namespace signbridge::recognizer
