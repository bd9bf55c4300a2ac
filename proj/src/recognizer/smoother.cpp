#include "signbridge/recognizer/smoother.hpp"

#include <map>

namespace signbridge::recognizer {

StreamSmoother::StreamSmoother(SmootherConfig config) : config_(config) {}

void StreamSmoother::reset() {
  window_.clear();
  last_emitted_.reset();
}

std::string StreamSmoother::current_state() const {
  std::map<std::string, std::pair<std::size_t, double>> votes;
  for (const auto& p : window_) {
    auto& [count, conf] = votes[p.label];
    ++count;
    conf += p.confidence;
  }
  for (const auto& [label, vote] : votes) {
    const auto [count, conf] = vote;
    if (count >= config_.min_agreeing &&
        conf / static_cast<double>(count) >= config_.min_mean_confidence) {
      return label;
    }
  }
  return std::string(kNoSign);
}

std::optional<std::string> StreamSmoother::push(const Prediction& prediction) {
  window_.push_back(prediction);
  while (window_.size() > config_.window) window_.pop_front();
  auto state = current_state();
  if (last_emitted_ == state) return std::nullopt;
  last_emitted_ = state;
  return state;
}

std::vector<std::string> smooth_stream(std::span<const Prediction> predictions,
                                       SmootherConfig config) {
  StreamSmoother smoother(config);
  std::vector<std::string> out;
  for (const auto& p : predictions) {
    if (auto e = smoother.push(p)) out.push_back(std::move(*e));
  }
  return out;
}

}  // namespace signbridge::recognizer
