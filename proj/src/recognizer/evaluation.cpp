#include "signbridge/recognizer/evaluation.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "signbridge/recognizer/classifier.hpp"

namespace signbridge::recognizer {

using nlohmann::json;

namespace {

constexpr int kCurveSteps = 20;

}  // namespace

double macro_f1_at(std::size_t num_classes, const std::vector<ScoredSample>& samples,
                   double threshold, std::vector<ClassMetrics>* per_class) {
  std::vector<std::size_t> tp(num_classes, 0), fp(num_classes, 0), fn(num_classes, 0),
      support(num_classes, 0);
  for (const auto& s : samples) {
    ++support[s.truth];
    if (s.confidence < threshold) {
      ++fn[s.truth];
    } else if (s.predicted == s.truth) {
      ++tp[s.truth];
    } else {
      ++fp[s.predicted];
      ++fn[s.truth];
    }
  }
  double sum = 0.0;
  std::vector<ClassMetrics> metrics(num_classes);
  for (std::size_t c = 0; c < num_classes; ++c) {
    auto& m = metrics[c];
    m.support = support[c];
    const auto predicted = tp[c] + fp[c];
    const auto actual = tp[c] + fn[c];
    m.precision = predicted ? static_cast<double>(tp[c]) / static_cast<double>(predicted) : 0.0;
    m.recall = actual ? static_cast<double>(tp[c]) / static_cast<double>(actual) : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    sum += m.f1;
  }
  if (per_class != nullptr) *per_class = std::move(metrics);
  return num_classes ? sum / static_cast<double>(num_classes) : 0.0;
}

EvalReport build_report(const std::vector<std::string>& classes,
                        const std::vector<ScoredSample>& samples) {
  const auto k = classes.size();
  EvalReport report;
  report.classes = classes;
  report.total = samples.size();
  report.confusion.assign(k, std::vector<std::size_t>(k, 0));
  std::size_t correct = 0;
  for (const auto& s : samples) {
    if (s.truth >= k || s.predicted >= k) throw DimensionMismatch("class id out of range");
    ++report.confusion[s.truth][s.predicted];
    if (s.truth == s.predicted) ++correct;
  }
  report.accuracy =
      samples.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(samples.size());
  report.macro_f1 = macro_f1_at(k, samples, 0.0, &report.per_class);
  for (int i = 0; i <= kCurveSteps; ++i) {
    const double t = static_cast<double>(i) / kCurveSteps;
    report.f1_confidence.push_back({t, macro_f1_at(k, samples, t)});
  }
  return report;
}

EvalReport evaluate(const MlpModel& model, const LandmarkDataset& dataset) {
  if (dataset.classes.size() != model.num_classes()) {
    throw DimensionMismatch("dataset has " + std::to_string(dataset.classes.size()) +
                            " classes, model has " + std::to_string(model.num_classes()));
  }
  std::vector<std::size_t> to_model(dataset.classes.size());
  for (std::size_t c = 0; c < dataset.classes.size(); ++c) {
    auto it = std::find(model.classes().begin(), model.classes().end(), dataset.classes[c]);
    if (it == model.classes().end()) {
      throw DimensionMismatch("dataset class \"" + dataset.classes[c] + "\" unknown to the model");
    }
    to_model[c] = static_cast<std::size_t>(it - model.classes().begin());
  }

  std::vector<ScoredSample> scored;
  scored.reserve(dataset.samples.size());
  for (const auto& s : dataset.samples) {
    auto p = predict_features(model, s.features);
    scored.push_back({to_model.at(s.label), p.class_id, p.confidence});
  }
  return build_report(model.classes(), scored);
}

json EvalReport::to_json() const {
  json per = json::array();
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    per.push_back({{"class", classes[c]},
                   {"precision", per_class[c].precision},
                   {"recall", per_class[c].recall},
                   {"f1", per_class[c].f1},
                   {"support", per_class[c].support}});
  }
  json curve = json::array();
  for (const auto& p : f1_confidence) {
    curve.push_back({{"threshold", p.threshold}, {"macro_f1", p.macro_f1}});
  }
  return {{"classes", classes},   {"total", total},       {"accuracy", accuracy},
          {"confusion", confusion}, {"per_class", per},   {"macro_f1", macro_f1},
          {"f1_confidence", curve}};
}

std::string EvalReport::curve_csv() const {
  std::ostringstream out;
  out << "threshold,macro_f1\n";
  for (const auto& p : f1_confidence) {
    out << std::fixed << std::setprecision(2) << p.threshold << ',';
    out << std::defaultfloat << std::setprecision(17) << p.macro_f1 << '\n';
  }
  return out.str();
}

}  // namespace signbridge::recognizer
