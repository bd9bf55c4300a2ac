#include "signbridge/recognizer/training.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "signbridge/recognizer/classifier.hpp"

namespace signbridge::recognizer {

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
  if (batch_size < 1) throw std::invalid_argument("batch size must be at least 1");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw std::invalid_argument("validation fraction must lie strictly between 0 and 1");
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw std::invalid_argument("momentum must lie in [0, 1)");
  }
}

std::string TrainingLog::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "epoch,train_loss,val_acc\n";
  for (const auto& e : epochs) out << e.epoch << ',' << e.train_loss << ',' << e.val_accuracy << '\n';
  return out.str();
}

Split stratified_split(const LandmarkDataset& dataset, double validation_fraction,
                       std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> by_class(dataset.classes.size());
  for (std::size_t i = 0; i < dataset.samples.size(); ++i) {
    by_class.at(dataset.samples[i].label).push_back(i);
  }
  std::mt19937_64 rng(seed);
  Split split;
  for (auto& members : by_class) {
    if (members.empty()) continue;
    std::shuffle(members.begin(), members.end(), rng);
    const auto n = members.size();
    auto n_val = static_cast<std::size_t>(std::llround(static_cast<double>(n) * validation_fraction));
    if (n >= 2) n_val = std::clamp<std::size_t>(n_val, 1, n - 1);
    split.validation.insert(split.validation.end(), members.begin(),
                            members.begin() + static_cast<std::ptrdiff_t>(n_val));
    split.train.insert(split.train.end(), members.begin() + static_cast<std::ptrdiff_t>(n_val),
                       members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.validation.begin(), split.validation.end());
  return split;
}

double accuracy_on(const MlpModel& model, const LandmarkDataset& dataset,
                   const std::vector<std::size_t>& indices) {
  if (indices.empty()) return 0.0;
  std::size_t correct = 0;
  for (auto i : indices) {
    const auto& s = dataset.samples[i];
    if (argmax(model.forward(s.features)) == s.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(indices.size());
}

TrainResult train(const LandmarkDataset& dataset, const TrainConfig& config) {
  config.validate();
  const auto counts = dataset.class_counts();
  if (dataset.samples.empty()) throw DegenerateDataset("dataset is empty");
  if (counts.size() < 2) throw DegenerateDataset("training needs at least two classes");
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] < 2) {
      throw DegenerateDataset("class \"" + dataset.classes[c] + "\" has " +
                              std::to_string(counts[c]) + " samples; at least 2 are required");
    }
  }

  std::vector<std::size_t> dims{kFeatureSize};
  dims.insert(dims.end(), config.hidden.begin(), config.hidden.end());
  dims.push_back(dataset.classes.size());

  TrainResult result{MlpModel(dims, dataset.classes), {},
                     stratified_split(dataset, config.validation_fraction, config.rng_seed)};
  auto& model = result.model;

  std::mt19937_64 rng(config.rng_seed ^ 0x9e3779b97f4a7c15ULL);
  model.initialize(rng);

  const auto& train_idx = result.split.train;
  std::vector<std::span<const double>> all_inputs;
  std::vector<std::size_t> all_labels;
  for (auto i : train_idx) {
    all_inputs.emplace_back(dataset.samples[i].features);
    all_labels.push_back(dataset.samples[i].label);
  }

  Gradients grads = Gradients::zeros_like(model);
  Gradients velocity = Gradients::zeros_like(model);
  std::vector<std::size_t> order(train_idx.size());
  std::vector<std::span<const double>> batch_inputs;
  std::vector<std::size_t> batch_labels;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);

    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch_inputs.clear();
      batch_labels.clear();
      for (std::size_t k = start; k < end; ++k) {
        batch_inputs.push_back(all_inputs[order[k]]);
        batch_labels.push_back(all_labels[order[k]]);
      }
      loss_and_gradients(model, batch_inputs, batch_labels, grads);
      for (std::size_t li = 0; li < model.layers().size(); ++li) {
        auto& layer = model.layers()[li];
        auto step = [&](std::vector<double>& params, std::vector<double>& vel,
                        const std::vector<double>& g) {
          for (std::size_t j = 0; j < params.size(); ++j) {
            vel[j] = config.momentum * vel[j] - config.learning_rate * g[j];
            params[j] += vel[j];
          }
        };
        step(layer.weights, velocity.weights[li], grads.weights[li]);
        step(layer.bias, velocity.bias[li], grads.bias[li]);
      }
    }

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = mean_loss(model, all_inputs, all_labels);
    record.train_accuracy = accuracy_on(model, dataset, train_idx);
    record.val_accuracy = accuracy_on(model, dataset, result.split.validation);
    result.log.epochs.push_back(record);
  }
  return result;
}

}  // namespace signbridge::recognizer
