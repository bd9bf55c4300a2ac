#include "signbridge/recognizer/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace signbridge::recognizer {

using nlohmann::json;

MlpModel::MlpModel(std::vector<std::size_t> dims, std::vector<std::string> classes)
    : dims_(std::move(dims)), classes_(std::move(classes)) {
  if (dims_.size() < 2) throw DimensionMismatch("a model needs at least input and output sizes");
  for (auto d : dims_) {
    if (d == 0) throw DimensionMismatch("layer sizes must be positive");
  }
  if (classes_.size() != dims_.back()) {
    throw DimensionMismatch("class table has " + std::to_string(classes_.size()) +
                            " labels for " + std::to_string(dims_.back()) + " outputs");
  }
  for (std::size_t i = 0; i + 1 < dims_.size(); ++i) {
    DenseLayer layer;
    layer.inputs = dims_[i];
    layer.outputs = dims_[i + 1];
    layer.weights.assign(layer.inputs * layer.outputs, 0.0);
    layer.bias.assign(layer.outputs, 0.0);
    layers_.push_back(std::move(layer));
  }
}

std::size_t MlpModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.weights.size() + l.bias.size();
  return n;
}

void MlpModel::initialize(std::mt19937_64& rng) {
  for (auto& layer : layers_) {
    std::normal_distribution<double> normal(0.0, std::sqrt(2.0 / static_cast<double>(layer.inputs)));
    for (auto& w : layer.weights) w = normal(rng);
    std::fill(layer.bias.begin(), layer.bias.end(), 0.0);
  }
}

namespace {

void dense(const DenseLayer& layer, std::span<const double> in, std::vector<double>& out) {
  out.assign(layer.bias.begin(), layer.bias.end());
  for (std::size_t r = 0; r < layer.outputs; ++r) {
    const double* row = &layer.weights[r * layer.inputs];
    double acc = out[r];
    for (std::size_t c = 0; c < layer.inputs; ++c) acc += row[c] * in[c];
    out[r] = acc;
  }
}

void relu(std::vector<double>& v) {
  for (auto& x : v) x = x > 0.0 ? x : 0.0;
}

void check_input(const MlpModel& model, std::span<const double> x) {
  if (x.size() != model.input_size()) {
    throw DimensionMismatch("input has " + std::to_string(x.size()) + " values, model expects " +
                            std::to_string(model.input_size()));
  }
}

// activations[0] is the input; activations[i] the post-activation output of
// layer i-1; the last entry holds raw logits.
void forward_trace(const MlpModel& model, std::span<const double> x,
                   std::vector<std::vector<double>>& activations) {
  const auto& layers = model.layers();
  activations.resize(layers.size() + 1);
  activations[0].assign(x.begin(), x.end());
  for (std::size_t i = 0; i < layers.size(); ++i) {
    dense(layers[i], activations[i], activations[i + 1]);
    if (i + 1 < layers.size()) relu(activations[i + 1]);
  }
}

void check_batch(const MlpModel& model, std::span<const std::span<const double>> inputs,
                 std::span<const std::size_t> labels) {
  if (inputs.size() != labels.size()) throw DimensionMismatch("inputs and labels differ in length");
  if (inputs.empty()) throw DimensionMismatch("empty batch");
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    check_input(model, inputs[i]);
    if (labels[i] >= model.num_classes()) throw DimensionMismatch("label out of range");
  }
}

}  // namespace

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double max = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (auto& v : p) {
    v = std::exp(v - max);
    sum += v;
  }
  for (auto& v : p) v /= sum;
  return p;
}

std::vector<double> MlpModel::logits(std::span<const double> x) const {
  check_input(*this, x);
  std::vector<std::vector<double>> acts;
  forward_trace(*this, x, acts);
  return std::move(acts.back());
}

std::vector<double> MlpModel::forward(std::span<const double> x) const {
  return softmax(logits(x));
}

Gradients Gradients::zeros_like(const MlpModel& model) {
  Gradients g;
  for (const auto& l : model.layers()) {
    g.weights.emplace_back(l.weights.size(), 0.0);
    g.bias.emplace_back(l.bias.size(), 0.0);
  }
  return g;
}

void Gradients::clear() {
  for (auto& w : weights) std::fill(w.begin(), w.end(), 0.0);
  for (auto& b : bias) std::fill(b.begin(), b.end(), 0.0);
}

double loss_and_gradients(const MlpModel& model, std::span<const std::span<const double>> inputs,
                          std::span<const std::size_t> labels, Gradients& grads) {
  check_batch(model, inputs, labels);
  const auto& layers = model.layers();
  if (grads.weights.size() != layers.size()) grads = Gradients::zeros_like(model);
  grads.clear();

  std::vector<std::vector<double>> acts;
  std::vector<double> delta;
  std::vector<double> prev_delta;
  double total_loss = 0.0;

  for (std::size_t s = 0; s < inputs.size(); ++s) {
    forward_trace(model, inputs[s], acts);
    auto probs = softmax(acts.back());
    total_loss -= std::log(std::max(probs[labels[s]], 1e-300));

    // dL/dlogits for softmax + cross-entropy
    delta = std::move(probs);
    delta[labels[s]] -= 1.0;

    for (std::size_t li = layers.size(); li-- > 0;) {
      const auto& layer = layers[li];
      const auto& in = acts[li];
      auto& gw = grads.weights[li];
      auto& gb = grads.bias[li];
      for (std::size_t r = 0; r < layer.outputs; ++r) {
        const double d = delta[r];
        gb[r] += d;
        if (d == 0.0) continue;
        double* row = &gw[r * layer.inputs];
        for (std::size_t c = 0; c < layer.inputs; ++c) row[c] += d * in[c];
      }
      if (li == 0) break;
      prev_delta.assign(layer.inputs, 0.0);
      for (std::size_t r = 0; r < layer.outputs; ++r) {
        const double d = delta[r];
        if (d == 0.0) continue;
        const double* row = &layer.weights[r * layer.inputs];
        for (std::size_t c = 0; c < layer.inputs; ++c) prev_delta[c] += d * row[c];
      }
      // rectifier derivative, taken as 0 at the kink
      for (std::size_t c = 0; c < layer.inputs; ++c) {
        if (in[c] <= 0.0) prev_delta[c] = 0.0;
      }
      std::swap(delta, prev_delta);
    }
  }

  const double scale = 1.0 / static_cast<double>(inputs.size());
  for (auto& w : grads.weights) {
    for (auto& v : w) v *= scale;
  }
  for (auto& b : grads.bias) {
    for (auto& v : b) v *= scale;
  }
  return total_loss * scale;
}

double mean_loss(const MlpModel& model, std::span<const std::span<const double>> inputs,
                 std::span<const std::size_t> labels) {
  check_batch(model, inputs, labels);
  double total = 0.0;
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    auto probs = model.forward(inputs[s]);
    total -= std::log(std::max(probs[labels[s]], 1e-300));
  }
  return total / static_cast<double>(inputs.size());
}

json model_to_json(const MlpModel& model) {
  json weights = json::array();
  json biases = json::array();
  for (const auto& layer : model.layers()) {
    json rows = json::array();
    for (std::size_t r = 0; r < layer.outputs; ++r) {
      rows.push_back(std::vector<double>(layer.weights.begin() + r * layer.inputs,
                                         layer.weights.begin() + (r + 1) * layer.inputs));
    }
    weights.push_back(std::move(rows));
    biases.push_back(layer.bias);
  }
  return {{"version", kModelFormatVersion},
          {"dims", model.dims()},
          {"classes", model.classes()},
          {"weights", std::move(weights)},
          {"biases", std::move(biases)}};
}

MlpModel model_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw SerializationError("model file must hold a JSON object");
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw VersionMismatch("model format version " + std::to_string(version) +
                            " is not supported (expected " +
                            std::to_string(kModelFormatVersion) + ")");
    }
    MlpModel model(doc.at("dims").get<std::vector<std::size_t>>(),
                   doc.at("classes").get<std::vector<std::string>>());
    const auto& weights = doc.at("weights");
    const auto& biases = doc.at("biases");
    if (weights.size() != model.layers().size() || biases.size() != model.layers().size()) {
      throw SerializationError("layer count does not match dims");
    }
    for (std::size_t li = 0; li < model.layers().size(); ++li) {
      auto& layer = model.layers()[li];
      const auto& rows = weights[li];
      if (rows.size() != layer.outputs) throw SerializationError("weight row count mismatch");
      for (std::size_t r = 0; r < layer.outputs; ++r) {
        if (rows[r].size() != layer.inputs) throw SerializationError("weight row width mismatch");
        for (std::size_t c = 0; c < layer.inputs; ++c) {
          const double v = rows[r][c].get<double>();
          if (!std::isfinite(v)) throw SerializationError("non-finite weight");
          layer.weight(r, c) = v;
        }
      }
      if (biases[li].size() != layer.outputs) throw SerializationError("bias length mismatch");
      for (std::size_t r = 0; r < layer.outputs; ++r) {
        const double v = biases[li][r].get<double>();
        if (!std::isfinite(v)) throw SerializationError("non-finite bias");
        layer.bias[r] = v;
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw SerializationError(std::string("malformed model: ") + e.what());
  } catch (const DimensionMismatch& e) {
    throw SerializationError(std::string("malformed model: ") + e.what());
  }
}

void save_model(const MlpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SerializationError("cannot write " + path.string());
  out << model_to_json(model).dump() << "\n";
  if (!out) throw SerializationError("write failed for " + path.string());
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SerializationError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw SerializationError(path.string() + ": " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace signbridge::recognizer
