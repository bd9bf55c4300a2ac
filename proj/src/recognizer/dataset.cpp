#include "signbridge/recognizer/dataset.hpp"

#include <algorithm>

namespace signbridge::recognizer {

const std::vector<std::string>& default_sign_labels() {
  static const std::vector<std::string> labels = {
      "Hello there", "I love you",  "I am sorry",          "Please",   "I need help",
      "Go there",    "Why are you crying?", "Be careful", "Stop it", "Don't do that"};
  return labels;
}

LandmarkDataset LandmarkDataset::from_frames(const std::vector<LandmarkFrame>& frames,
                                             std::vector<std::string> classes) {
  const bool fixed = !classes.empty();
  LandmarkDataset ds;
  ds.classes = std::move(classes);
  for (const auto& frame : frames) {
    if (!frame.label) throw InvalidFrame("dataset frame without a label");
    auto it = std::find(ds.classes.begin(), ds.classes.end(), *frame.label);
    if (it == ds.classes.end()) {
      if (fixed) throw InvalidFrame("label not in class table: " + *frame.label);
      ds.classes.push_back(*frame.label);
      it = ds.classes.end() - 1;
    }
    ds.samples.push_back(
        {normalize_features(frame), static_cast<std::size_t>(it - ds.classes.begin())});
  }
  return ds;
}

std::vector<std::size_t> LandmarkDataset::class_counts() const {
  std::vector<std::size_t> counts(classes.size(), 0);
  for (const auto& s : samples) ++counts.at(s.label);
  return counts;
}

}  // namespace signbridge::recognizer
