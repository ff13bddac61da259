#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crisim/rng.hpp"

namespace crisim::nn {

// Dense row-major matrix; rows are samples throughout this module.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double* row(int i) { return data.data() + static_cast<std::size_t>(i) * cols; }
  const double* row(int i) const { return data.data() + static_cast<std::size_t>(i) * cols; }
  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

enum class Activation { kRelu, kTanh, kLinear, kSoftmax };
enum class Head { kRegression, kClassification };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

// One dense layer: w is (output_dim x input_dim), b has output_dim entries.
struct Layer {
  Matrix w;
  std::vector<double> b;
  Activation activation = Activation::kLinear;
};

struct DenseNetwork {
  std::vector<Layer> layers;
  Head head = Head::kRegression;

  int input_dim() const { return layers.front().w.cols; }
  int output_dim() const { return layers.back().w.rows; }
};

// Glorot-uniform weights (+-sqrt(6/(fan_in+fan_out))), zero biases. Hidden
// layers use hidden_activation; the output layer is linear for regression and
// softmax for classification.
DenseNetwork make_network(int input_dim, const std::vector<int>& hidden, int output_dim,
                          Activation hidden_activation, Head head, RngStream rng);

double relu(double z);
double tanh_act(double z);
void softmax_in_place(std::span<double> z);

// Batched forward pass: inputs is (s x input_dim), result (s x output_dim).
Matrix forward(const DenseNetwork& net, const Matrix& inputs);
std::vector<double> forward(const DenseNetwork& net, std::span<const double> input);

// Half the sum of squared differences over the whole batch.
double loss_regression(const Matrix& targets, const Matrix& outputs);
// -(1/s) sum_i sum_v t ln(p), p clamped at 1e-12; rows of outputs must be
// probability vectors.
double loss_crossentropy(const Matrix& one_hot_targets, const Matrix& outputs);

// Parameter-shaped container, used for gradients and optimizer moments.
struct ParamSet {
  std::vector<Matrix> w;
  std::vector<std::vector<double>> b;

  static ParamSet zeros_like(const DenseNetwork& net);
};

// Exact gradients of the head's loss (regression: half-sum squared error;
// classification: mean cross-entropy after softmax) for every W_k, b_k.
ParamSet backprop(const DenseNetwork& net, const Matrix& inputs, const Matrix& targets);

struct AdamConfig {
  double learning_rate = 0.003;
  double delta1 = 0.9;
  double delta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  ParamSet m;
  ParamSet v;

  static AdamState zeros_like(const DenseNetwork& net);
};

// m <- d1 m + (1-d1) grad; v <- d2 v + (1-d2) grad^2; theta <- theta - eta m / sqrt(v + eps).
// No bias correction; epsilon sits inside the square root.
void adam_step(DenseNetwork& net, const ParamSet& gradients, AdamState& state,
               const AdamConfig& config);

struct TrainConfig {
  double learning_rate = 0.003;
  int batch_size = 256;
  int iteration_steps = 300;
  double validation_split = 0.1;
  int validation_frequency = 10;
  double delta1 = 0.9;
  double delta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 1;
};

struct TrainRecord {
  int iteration = 0;  // 1-based
  double loss = 0.0;
  double metric = 0.0;  // mini-batch RMSE (regression) or accuracy (classification)
  bool has_validation = false;
  double validation_loss = 0.0;
  double validation_metric = 0.0;
};

struct TrainHistory {
  std::vector<TrainRecord> records;
  double final_validation_loss = 0.0;
  double final_validation_metric = 0.0;
};

// Mini-batch training with a held-out validation split, shuffle-once-per-epoch
// batching and the Adam rule above. Deterministic per (seed, config, dataset).
// Aborts with a diagnostic if the loss turns non-finite.
TrainHistory train(DenseNetwork& net, const Matrix& features, const Matrix& targets,
                   const TrainConfig& config);

// Element-wise root mean square error over all scalar entries.
double rmse(std::span<const double> targets, std::span<const double> outputs);
double rmse(const Matrix& targets, const Matrix& outputs);

int argmax(std::span<const double> values);

double accuracy(std::span<const int> predictions, std::span<const int> labels);

// Row = true class, column = predicted class, cells as percentages of the
// total count (labels and predictions are 1-based).
Matrix confusion(std::span<const int> predictions, std::span<const int> labels,
                 int class_count);

// Portable JSON persistence with schema version, activations, dimensions and
// row-major parameter arrays at full round-trip precision.
void save_network(const DenseNetwork& net, const std::string& path);
DenseNetwork load_network(const std::string& path);

}  // namespace crisim::nn
