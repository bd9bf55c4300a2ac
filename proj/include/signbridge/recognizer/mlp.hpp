#pragma once

#include <cstddef>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "signbridge/error.hpp"

namespace signbridge::recognizer {

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SerializationError : public Error {
 public:
  using Error::Error;
};

class VersionMismatch : public Error {
 public:
  using Error::Error;
};

/// Fully connected layer; weights are out x in, row-major.
struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  double& weight(std::size_t row, std::size_t col) { return weights[row * inputs + col]; }
  double weight(std::size_t row, std::size_t col) const { return weights[row * inputs + col]; }

  bool operator==(const DenseLayer&) const = default;
};

/// Feed-forward classifier: rectifier on every hidden layer, softmax output.
class MlpModel {
 public:
  MlpModel() = default;
  /// Zero-initialised network over dims = [input, hidden..., classes].
  MlpModel(std::vector<std::size_t> dims, std::vector<std::string> classes);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t input_size() const { return dims_.front(); }
  std::size_t num_classes() const { return dims_.back(); }

  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::size_t parameter_count() const;

  std::vector<double> logits(std::span<const double> x) const;
  /// Softmax probabilities; throws DimensionMismatch on a wrong input size.
  std::vector<double> forward(std::span<const double> x) const;

  /// Variance-scaled (He) normal weights, zero biases.
  void initialize(std::mt19937_64& rng);

  bool operator==(const MlpModel&) const = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> classes_;
  std::vector<DenseLayer> layers_;
};

/// Numerically stable softmax.
std::vector<double> softmax(std::span<const double> logits);

/// Same shapes as the model's layers.
struct Gradients {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> bias;

  static Gradients zeros_like(const MlpModel& model);
  void clear();
};

/// Mean cross-entropy over the batch and its gradient with respect to every
/// parameter, written into grads. inputs[i] is paired with labels[i].
double loss_and_gradients(const MlpModel& model, std::span<const std::span<const double>> inputs,
                          std::span<const std::size_t> labels, Gradients& grads);

/// Mean cross-entropy without gradients.
double mean_loss(const MlpModel& model, std::span<const std::span<const double>> inputs,
                 std::span<const std::size_t> labels);

// {version: 1, dims, classes, weights: [layer][row][col], biases: [layer][row]}
inline constexpr int kModelFormatVersion = 1;

nlohmann::json model_to_json(const MlpModel& model);
MlpModel model_from_json(const nlohmann::json& doc);
void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace signbridge::recognizer
