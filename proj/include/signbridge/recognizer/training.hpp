#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "signbridge/error.hpp"
#include "signbridge/recognizer/dataset.hpp"
#include "signbridge/recognizer/mlp.hpp"

namespace signbridge::recognizer {

struct TrainConfig {
  std::size_t epochs = 500;
  std::size_t batch_size = 128;
  double validation_fraction = 0.25;
  double learning_rate = 0.01;
  double momentum = 0.9;
  std::uint64_t rng_seed = 0;
  std::vector<std::size_t> hidden = {64, 32};

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

class DegenerateDataset : public Error {
 public:
  using Error::Error;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double val_accuracy = 0.0;

  bool operator==(const EpochRecord&) const = default;
};

struct TrainingLog {
  std::vector<EpochRecord> epochs;

  /// "epoch,train_loss,val_acc" header plus one row per epoch.
  std::string to_csv() const;
  bool operator==(const TrainingLog&) const = default;
};

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

/// Per-class shuffle, then round(n * fraction) samples of each class go to
/// validation, clamped so both sides keep at least one sample per class.
Split stratified_split(const LandmarkDataset& dataset, double validation_fraction,
                       std::uint64_t seed);

struct TrainResult {
  MlpModel model;
  TrainingLog log;
  Split split;
};

/// Minibatch momentum SGD on mean cross-entropy. The whole run is a pure
/// function of (dataset, config) on a given platform.
TrainResult train(const LandmarkDataset& dataset, const TrainConfig& config);

/// Fraction of the indexed samples whose argmax prediction is correct.
double accuracy_on(const MlpModel& model, const LandmarkDataset& dataset,
                   const std::vector<std::size_t>& indices);

}  // namespace signbridge::recognizer
