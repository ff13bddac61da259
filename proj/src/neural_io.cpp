#include <fstream>
#include <nlohmann/json.hpp>

#include "crisim/neural.hpp"
#include "crisim/types.hpp"

namespace crisim::nn {
namespace {

constexpr int kSchemaVersion = 1;

}  // namespace

void save_network(const DenseNetwork& net, const std::string& path) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["head"] = net.head == Head::kClassification ? "classification" : "regression";
  nlohmann::json layers = nlohmann::json::array();
  for (const Layer& layer : net.layers) {
    nlohmann::json entry;
    entry["activation"] = activation_name(layer.activation);
    entry["output_dim"] = layer.w.rows;
    entry["input_dim"] = layer.w.cols;
    entry["weights"] = layer.w.data;  // row-major
    entry["biases"] = layer.b;
    layers.push_back(std::move(entry));
  }
  doc["layers"] = std::move(layers);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_network: cannot open " + path);
  out << doc.dump(1) << '\n';
  if (!out) throw std::runtime_error("save_network: write failed for " + path);
}

DenseNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_network: cannot open " + path);
  nlohmann::json doc = nlohmann::json::parse(in);

  if (doc.at("schema_version").get<int>() != kSchemaVersion)
    throw std::runtime_error("load_network: unsupported schema version in " + path);

  DenseNetwork net;
  std::string head = doc.at("head").get<std::string>();
  if (head == "classification")
    net.head = Head::kClassification;
  else if (head == "regression")
    net.head = Head::kRegression;
  else
    throw std::runtime_error("load_network: unknown head '" + head + "' in " + path);

  for (const nlohmann::json& entry : doc.at("layers")) {
    Layer layer;
    layer.activation = activation_from_name(entry.at("activation").get<std::string>());
    int out_dim = entry.at("output_dim").get<int>();
    int in_dim = entry.at("input_dim").get<int>();
    layer.w = Matrix(out_dim, in_dim);
    std::vector<double> weights = entry.at("weights").get<std::vector<double>>();
    require(static_cast<int>(weights.size()) == out_dim * in_dim,
            "load_network: weight count does not match dimensions");
    layer.w.data = std::move(weights);
    layer.b = entry.at("biases").get<std::vector<double>>();
    require(static_cast<int>(layer.b.size()) == out_dim,
            "load_network: bias count does not match dimensions");
    if (!net.layers.empty())
      require(in_dim == net.layers.back().w.rows, "load_network: layer dimensions do not chain");
    net.layers.push_back(std::move(layer));
  }
  require(!net.layers.empty(), "load_network: no layers");

  Activation last = net.layers.back().activation;
  require((net.head == Head::kClassification && last == Activation::kSoftmax) ||
              (net.head == Head::kRegression && last == Activation::kLinear),
          "load_network: head and output activation disagree");
  return net;
}

}  // namespace crisim::nn
