#include "signbridge/recognizer/classifier.hpp"

#include <map>
#include <stdexcept>

namespace signbridge::recognizer {

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

Prediction predict_features(const MlpModel& model, const FeatureVector& features) {
  const auto probs = model.forward(features);
  const auto id = argmax(probs);
  return {id, model.classes()[id], probs[id]};
}

Prediction predict(const MlpModel& model, const LandmarkFrame& frame) {
  return predict_features(model, normalize_features(frame));
}

Prediction majority_vote(std::span<const Prediction> predictions) {
  if (predictions.empty()) throw std::invalid_argument("majority vote over no predictions");
  std::map<std::size_t, std::pair<std::size_t, double>> tally;
  for (const auto& p : predictions) {
    auto& [count, conf] = tally[p.class_id];
    ++count;
    conf += p.confidence;
  }
  auto best = tally.begin();
  for (auto it = tally.begin(); it != tally.end(); ++it) {
    if (it->second.first > best->second.first) best = it;
  }
  std::string label;
  for (const auto& p : predictions) {
    if (p.class_id == best->first) {
      label = p.label;
      break;
    }
  }
  return {best->first, label, best->second.second / static_cast<double>(best->second.first)};
}

}  // namespace signbridge::recognizer
