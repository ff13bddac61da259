#include "crisim/neural.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crisim/types.hpp"

namespace crisim::nn {
namespace {

double dot(const double* a, const double* b, int n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  double s = (s0 + s1) + (s2 + s3);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double* y, double a, const double* x, int n) {
  for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

// out = x * w^T + b (row-broadcast): (s x in) * (out x in)^T -> (s x out).
Matrix affine(const Matrix& x, const Matrix& w, const std::vector<double>& b) {
  Matrix out(x.rows, w.rows);
  for (int i = 0; i < x.rows; ++i) {
    const double* xi = x.row(i);
    double* oi = out.row(i);
    for (int j = 0; j < w.rows; ++j) oi[j] = dot(xi, w.row(j), x.cols) + b[j];
  }
  return out;
}

void apply_activation(Matrix& z, Activation act) {
  switch (act) {
    case Activation::kLinear:
      return;
    case Activation::kRelu:
      for (double& v : z.data) v = relu(v);
      return;
    case Activation::kTanh:
      for (double& v : z.data) v = tanh_act(v);
      return;
    case Activation::kSoftmax:
      for (int i = 0; i < z.rows; ++i) softmax_in_place({z.row(i), static_cast<std::size_t>(z.cols)});
      return;
  }
}

// Derivative of the activation expressed through the activated value.
double activation_derivative(Activation act, double a) {
  switch (act) {
    case Activation::kLinear:
      return 1.0;
    case Activation::kRelu:
      return a > 0.0 ? 1.0 : 0.0;
    case Activation::kTanh:
      return 1.0 - a * a;
    case Activation::kSoftmax:
      throw std::logic_error("softmax derivative handled at the output layer only");
  }
  return 0.0;
}

struct ForwardCache {
  std::vector<Matrix> a;  // a[0] = input, a[k] = activation of layer k
};

ForwardCache forward_cached(const DenseNetwork& net, const Matrix& inputs) {
  require(!net.layers.empty(), "forward: network has no layers");
  require(inputs.cols == net.input_dim(), "forward: input dimension mismatch");
  ForwardCache cache;
  cache.a.reserve(net.layers.size() + 1);
  cache.a.push_back(inputs);
  for (const Layer& layer : net.layers) {
    Matrix z = affine(cache.a.back(), layer.w, layer.b);
    apply_activation(z, layer.activation);
    cache.a.push_back(std::move(z));
  }
  return cache;
}

void check_shapes(const DenseNetwork& net, const Matrix& inputs, const Matrix& targets) {
  require(inputs.rows == targets.rows, "batch: inputs/targets row mismatch");
  require(inputs.cols == net.input_dim(), "batch: input dimension mismatch");
  require(targets.cols == net.output_dim(), "batch: target dimension mismatch");
}

// Gradients from an already-computed forward cache. delta starts as dLoss/dZ of
// the output layer, which for both heads is (output - target) up to the 1/s
// classification factor.
ParamSet gradients_from_cache(const DenseNetwork& net, const ForwardCache& cache,
                              const Matrix& targets) {
  int layer_count = static_cast<int>(net.layers.size());
  int s = targets.rows;
  ParamSet grads = ParamSet::zeros_like(net);

  Matrix delta = cache.a.back();
  double scale = net.head == Head::kClassification ? 1.0 / s : 1.0;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < delta.cols; ++j) delta.at(i, j) = (delta.at(i, j) - targets.at(i, j)) * scale;

  for (int k = layer_count - 1; k >= 0; --k) {
    const Matrix& a_prev = cache.a[k];
    Matrix& dw = grads.w[k];
    std::vector<double>& db = grads.b[k];
    for (int i = 0; i < s; ++i) {
      const double* di = delta.row(i);
      const double* ai = a_prev.row(i);
      for (int j = 0; j < delta.cols; ++j) {
        db[j] += di[j];
        if (di[j] != 0.0) axpy(dw.row(j), di[j], ai, a_prev.cols);
      }
    }
    if (k > 0) {
      const Matrix& w = net.layers[k].w;
      Matrix prev(s, a_prev.cols);
      for (int i = 0; i < s; ++i) {
        const double* di = delta.row(i);
        double* pi = prev.row(i);
        for (int j = 0; j < delta.cols; ++j)
          if (di[j] != 0.0) axpy(pi, di[j], w.row(j), w.cols);
      }
      Activation act = net.layers[k - 1].activation;
      for (int i = 0; i < s; ++i) {
        double* pi = prev.row(i);
        const double* ai = a_prev.row(i);
        for (int j = 0; j < a_prev.cols; ++j) pi[j] *= activation_derivative(act, ai[j]);
      }
      delta = std::move(prev);
    }
  }
  return grads;
}

Matrix gather_rows(const Matrix& src, std::span<const int> indices) {
  Matrix out(static_cast<int>(indices.size()), src.cols);
  for (std::size_t i = 0; i < indices.size(); ++i)
    std::copy_n(src.row(indices[i]), src.cols, out.row(static_cast<int>(i)));
  return out;
}

void shuffle_indices(std::vector<int>& idx, RngStream& rng) {
  for (std::size_t i = idx.size(); i > 1; --i)
    std::swap(idx[i - 1], idx[rng.next_below(i)]);
}

std::vector<int> label_rows(const Matrix& one_hot) {
  std::vector<int> labels(one_hot.rows);
  for (int i = 0; i < one_hot.rows; ++i)
    labels[i] = argmax({one_hot.row(i), static_cast<std::size_t>(one_hot.cols)}) + 1;
  return labels;
}

double batch_metric(const DenseNetwork& net, const Matrix& targets, const Matrix& outputs) {
  if (net.head == Head::kRegression) return rmse(targets, outputs);
  std::vector<int> predicted = label_rows(outputs);
  std::vector<int> truth = label_rows(targets);
  return accuracy(predicted, truth);
}

double batch_loss(const DenseNetwork& net, const Matrix& targets, const Matrix& outputs) {
  return net.head == Head::kRegression ? loss_regression(targets, outputs)
                                       : loss_crossentropy(targets, outputs);
}

}  // namespace

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::kRelu: return "relu";
    case Activation::kTanh: return "tanh";
    case Activation::kLinear: return "linear";
    case Activation::kSoftmax: return "softmax";
  }
  return "unknown";
}

Activation activation_from_name(const std::string& name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  if (name == "linear") return Activation::kLinear;
  if (name == "softmax") return Activation::kSoftmax;
  throw std::invalid_argument("unknown activation name: " + name);
}

DenseNetwork make_network(int input_dim, const std::vector<int>& hidden, int output_dim,
                          Activation hidden_activation, Head head, RngStream rng) {
  require(input_dim >= 1 && output_dim >= 1, "make_network: dimensions must be positive");
  require(hidden_activation == Activation::kRelu || hidden_activation == Activation::kTanh,
          "make_network: hidden activation must be relu or tanh");
  DenseNetwork net;
  net.head = head;
  std::vector<int> dims;
  dims.push_back(input_dim);
  for (int h : hidden) {
    require(h >= 1, "make_network: hidden sizes must be positive");
    dims.push_back(h);
  }
  dims.push_back(output_dim);

  for (std::size_t k = 1; k < dims.size(); ++k) {
    Layer layer;
    layer.w = Matrix(dims[k], dims[k - 1]);
    layer.b.assign(dims[k], 0.0);
    bool is_output = (k + 1 == dims.size());
    layer.activation = is_output ? (head == Head::kClassification ? Activation::kSoftmax
                                                                  : Activation::kLinear)
                                 : hidden_activation;
    double limit = std::sqrt(6.0 / (dims[k - 1] + dims[k]));
    for (double& w : layer.w.data) w = (2.0 * rng.next_double() - 1.0) * limit;
    net.layers.push_back(std::move(layer));
  }
  return net;
}

double relu(double z) { return z > 0.0 ? z : 0.0; }

double tanh_act(double z) { return std::tanh(z); }

void softmax_in_place(std::span<double> z) {
  double peak = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - peak);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

Matrix forward(const DenseNetwork& net, const Matrix& inputs) {
  require(!net.layers.empty(), "forward: network has no layers");
  require(inputs.cols == net.input_dim(), "forward: input dimension mismatch");
  Matrix a = inputs;
  for (const Layer& layer : net.layers) {
    Matrix z = affine(a, layer.w, layer.b);
    apply_activation(z, layer.activation);
    a = std::move(z);
  }
  return a;
}

std::vector<double> forward(const DenseNetwork& net, std::span<const double> input) {
  Matrix x(1, static_cast<int>(input.size()));
  std::copy(input.begin(), input.end(), x.data.begin());
  Matrix y = forward(net, x);
  return y.data;
}

double loss_regression(const Matrix& targets, const Matrix& outputs) {
  require(targets.rows == outputs.rows && targets.cols == outputs.cols,
          "loss_regression: shape mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < targets.data.size(); ++i) {
    double d = targets.data[i] - outputs.data[i];
    sum += d * d;
  }
  return 0.5 * sum;
}

double loss_crossentropy(const Matrix& one_hot_targets, const Matrix& outputs) {
  require(one_hot_targets.rows == outputs.rows && one_hot_targets.cols == outputs.cols,
          "loss_crossentropy: shape mismatch");
  for (int i = 0; i < outputs.rows; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < outputs.cols; ++j) {
      require(outputs.at(i, j) >= 0.0, "loss_crossentropy: negative probability");
      row_sum += outputs.at(i, j);
    }
    require(std::abs(row_sum - 1.0) <= 1e-6, "loss_crossentropy: row does not sum to 1");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < outputs.data.size(); ++i)
    if (one_hot_targets.data[i] != 0.0)
      sum -= one_hot_targets.data[i] * std::log(std::max(outputs.data[i], 1e-12));
  return sum / one_hot_targets.rows;
}

ParamSet ParamSet::zeros_like(const DenseNetwork& net) {
  ParamSet p;
  for (const Layer& layer : net.layers) {
    p.w.emplace_back(layer.w.rows, layer.w.cols);
    p.b.emplace_back(layer.b.size(), 0.0);
  }
  return p;
}

ParamSet backprop(const DenseNetwork& net, const Matrix& inputs, const Matrix& targets) {
  check_shapes(net, inputs, targets);
  ForwardCache cache = forward_cached(net, inputs);
  return gradients_from_cache(net, cache, targets);
}

AdamState AdamState::zeros_like(const DenseNetwork& net) {
  return AdamState{ParamSet::zeros_like(net), ParamSet::zeros_like(net)};
}

void adam_step(DenseNetwork& net, const ParamSet& gradients, AdamState& state,
               const AdamConfig& config) {
  auto update = [&](double& theta, double g, double& m, double& v) {
    m = config.delta1 * m + (1.0 - config.delta1) * g;
    v = config.delta2 * v + (1.0 - config.delta2) * g * g;
    theta -= config.learning_rate * m / std::sqrt(v + config.epsilon);
  };
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    Layer& layer = net.layers[k];
    for (std::size_t i = 0; i < layer.w.data.size(); ++i)
      update(layer.w.data[i], gradients.w[k].data[i], state.m.w[k].data[i], state.v.w[k].data[i]);
    for (std::size_t i = 0; i < layer.b.size(); ++i)
      update(layer.b[i], gradients.b[k][i], state.m.b[k][i], state.v.b[k][i]);
  }
}

TrainHistory train(DenseNetwork& net, const Matrix& features, const Matrix& targets,
                   const TrainConfig& config) {
  require(features.rows >= 1, "train: empty dataset");
  check_shapes(net, features, targets);
  require(config.batch_size >= 1, "train: batch_size must be >= 1");
  require(config.iteration_steps >= 1, "train: iteration_steps must be >= 1");
  require(config.validation_split > 0.0 && config.validation_split < 1.0,
          "train: validation_split must lie in (0, 1)");
  require(config.validation_frequency >= 1, "train: validation_frequency must be >= 1");

  int n = features.rows;
  int val_count = static_cast<int>(std::lround(n * config.validation_split));
  val_count = std::clamp(val_count, 1, n - 1);
  int train_count = n - val_count;

  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  RngStream split_rng = RngStream::derive(config.seed, {stream::kSplit});
  shuffle_indices(perm, split_rng);
  std::vector<int> train_idx(perm.begin(), perm.begin() + train_count);
  std::vector<int> val_idx(perm.begin() + train_count, perm.end());

  Matrix val_x = gather_rows(features, val_idx);
  Matrix val_t = gather_rows(targets, val_idx);

  int batch = std::min(config.batch_size, train_count);
  AdamConfig adam{config.learning_rate, config.delta1, config.delta2, config.epsilon};
  AdamState state = AdamState::zeros_like(net);

  TrainHistory history;
  history.records.reserve(config.iteration_steps);

  auto validate = [&]() {
    Matrix out = forward(net, val_x);
    return std::pair<double, double>{batch_loss(net, val_t, out), batch_metric(net, val_t, out)};
  };

  std::uint64_t epoch = 0;
  int pos = train_count;  // forces the initial shuffle
  std::vector<int> order = train_idx;
  std::vector<int> batch_idx(batch);
  for (int it = 1; it <= config.iteration_steps; ++it) {
    if (pos + batch > train_count) {
      RngStream shuffle_rng = RngStream::derive(config.seed, {stream::kShuffle, epoch});
      order = train_idx;
      shuffle_indices(order, shuffle_rng);
      ++epoch;
      pos = 0;
    }
    std::copy_n(order.begin() + pos, batch, batch_idx.begin());
    pos += batch;

    Matrix batch_x = gather_rows(features, batch_idx);
    Matrix batch_t = gather_rows(targets, batch_idx);
    ForwardCache cache = forward_cached(net, batch_x);
    const Matrix& outputs = cache.a.back();

    TrainRecord record;
    record.iteration = it;
    record.loss = batch_loss(net, batch_t, outputs);
    record.metric = batch_metric(net, batch_t, outputs);
    if (!std::isfinite(record.loss))
      throw std::runtime_error("training diverged: non-finite loss at iteration " +
                               std::to_string(it));

    ParamSet grads = gradients_from_cache(net, cache, batch_t);
    adam_step(net, grads, state, adam);

    if (it % config.validation_frequency == 0) {
      auto [vl, vm] = validate();
      record.has_validation = true;
      record.validation_loss = vl;
      record.validation_metric = vm;
    }
    history.records.push_back(record);
  }

  auto [vl, vm] = validate();
  history.final_validation_loss = vl;
  history.final_validation_metric = vm;
  return history;
}

double rmse(std::span<const double> targets, std::span<const double> outputs) {
  require(targets.size() == outputs.size(), "rmse: length mismatch");
  require(!targets.empty(), "rmse: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    double d = targets[i] - outputs[i];
    sum += d * d;
  }
  return std::sqrt(sum / targets.size());
}

double rmse(const Matrix& targets, const Matrix& outputs) {
  require(targets.rows == outputs.rows && targets.cols == outputs.cols, "rmse: shape mismatch");
  return rmse(std::span<const double>(targets.data), std::span<const double>(outputs.data));
}

int argmax(std::span<const double> values) {
  require(!values.empty(), "argmax: empty input");
  return static_cast<int>(std::max_element(values.begin(), values.end()) - values.begin());
}

double accuracy(std::span<const int> predictions, std::span<const int> labels) {
  require(predictions.size() == labels.size(), "accuracy: length mismatch");
  require(!predictions.empty(), "accuracy: empty input");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    if (predictions[i] == labels[i]) ++hits;
  return static_cast<double>(hits) / predictions.size();
}

Matrix confusion(std::span<const int> predictions, std::span<const int> labels, int class_count) {
  require(predictions.size() == labels.size(), "confusion: length mismatch");
  require(!predictions.empty(), "confusion: empty input");
  require(class_count >= 1, "confusion: class_count must be positive");
  Matrix counts(class_count, class_count);
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    require(labels[i] >= 1 && labels[i] <= class_count, "confusion: label out of range");
    require(predictions[i] >= 1 && predictions[i] <= class_count,
            "confusion: prediction out of range");
    counts.at(labels[i] - 1, predictions[i] - 1) += 1.0;
  }
  double to_percent = 100.0 / predictions.size();
  for (double& v : counts.data) v *= to_percent;
  return counts;
}

}  // namespace crisim::nn
