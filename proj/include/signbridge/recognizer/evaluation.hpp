#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "signbridge/recognizer/dataset.hpp"
#include "signbridge/recognizer/mlp.hpp"

namespace signbridge::recognizer {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct CurvePoint {
  double threshold = 0.0;
  double macro_f1 = 0.0;
};

struct EvalReport {
  std::vector<std::string> classes;
  std::size_t total = 0;
  double accuracy = 0.0;
  // rows: true class, columns: predicted class
  std::vector<std::vector<std::size_t>> confusion;
  std::vector<ClassMetrics> per_class;
  double macro_f1 = 0.0;
  // thresholds 0.00, 0.05, ..., 1.00
  std::vector<CurvePoint> f1_confidence;

  nlohmann::json to_json() const;
  /// "threshold,macro_f1" rows for external plotting.
  std::string curve_csv() const;
};

struct ScoredSample {
  std::size_t truth = 0;
  std::size_t predicted = 0;
  double confidence = 0.0;
};

/// Macro-F1 when predictions below `threshold` confidence are rejected. A
/// rejected sample is a false negative for its true class and never a false
/// positive. Classes with no true or predicted samples score 0.
double macro_f1_at(std::size_t num_classes, const std::vector<ScoredSample>& samples,
                   double threshold, std::vector<ClassMetrics>* per_class = nullptr);

EvalReport build_report(const std::vector<std::string>& classes,
                        const std::vector<ScoredSample>& samples);

/// Scores the model on every sample. The dataset's class table must match the
/// model's (same size, same labels); samples are mapped by label name.
EvalReport evaluate(const MlpModel& model, const LandmarkDataset& dataset);

}  // namespace signbridge::recognizer
