#include "crisim/scenario.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "crisim/types.hpp"

namespace crisim {
namespace {

const struct {
  SchemeId id;
  const char* name;
} kSchemes[] = {
    {SchemeId::kCrisRs, "CRIS-RS"},     {SchemeId::kCrisMl, "CRIS-ML"},
    {SchemeId::kCrisMrc, "CRIS-MRC"},   {SchemeId::kDnnrRs, "DNNR-RS"},
    {SchemeId::kDnnrMrc, "DNNR-MRC"},   {SchemeId::kDnnrdRs, "DNNRD-RS"},
    {SchemeId::kDnnrdMrc, "DNNRD-MRC"},
};

}  // namespace

std::string scheme_name(SchemeId id) {
  for (const auto& s : kSchemes)
    if (s.id == id) return s.name;
  throw std::logic_error("scheme_name: unknown scheme");
}

SchemeId scheme_from_name(const std::string& name) {
  for (const auto& s : kSchemes)
    if (name == s.name) return s.id;
  throw std::invalid_argument("unknown scheme name: " + name);
}

bool scheme_uses_dnn_phases(SchemeId id) {
  return id == SchemeId::kDnnrRs || id == SchemeId::kDnnrMrc || id == SchemeId::kDnnrdRs ||
         id == SchemeId::kDnnrdMrc;
}

bool scheme_uses_dnn_detector(SchemeId id) {
  return id == SchemeId::kDnnrdRs || id == SchemeId::kDnnrdMrc;
}

bool scheme_is_rs(SchemeId id) {
  return id == SchemeId::kCrisRs || id == SchemeId::kDnnrRs || id == SchemeId::kDnnrdRs;
}

bool scheme_is_mrc(SchemeId id) {
  return id == SchemeId::kCrisMrc || id == SchemeId::kDnnrMrc || id == SchemeId::kDnnrdMrc;
}

double relay_theta(const ScenarioConfig& config, const RelaySpec& relay) {
  if (relay.theta != 0.0) return relay.theta;
  return config.theta != 0.0 ? config.theta : kPi / 2.0;
}

void validate_scenario(const ScenarioConfig& config) {
  require(config.m == 4 || config.m == 8 || config.m == 16,
          "config: modulation order must be 4, 8 or 16");
  require(config.c > 0.0, "config: path loss exponent must be positive");
  require(!config.relays.empty(), "config: relay list must not be empty");
  for (const RelaySpec& r : config.relays) {
    require(r.d_sr > 0.0 && r.d_sr < 1.0, "config: relay d_sr must lie in (0, 1)");
    require(r.n_reflectors >= 1, "config: relay needs at least one reflector");
    double theta = relay_theta(config, r);
    require(theta >= kPi / 2.0 && theta <= kPi, "config: theta must lie in [pi/2, pi]");
  }
  require(!config.snr_grid_db.empty(), "config: SNR grid must not be empty");
  for (std::size_t i = 1; i < config.snr_grid_db.size(); ++i)
    require(config.snr_grid_db[i] > config.snr_grid_db[i - 1],
            "config: SNR grid must be strictly increasing");
  require(!config.schemes.empty(), "config: scheme list must not be empty");
  require(config.min_bit_errors >= 1, "config: min_bit_errors must be >= 1");
  require(config.max_bits >= 1, "config: max_bits must be >= 1");
  const TrainingSpec& t = config.training;
  require(t.relay_samples >= 1 && t.destination_samples >= 1, "config: sample counts must be >= 1");
  require(t.relay_iterations >= 1 && t.destination_iterations >= 1,
          "config: iteration counts must be >= 1");
  require(t.learning_rate > 0.0, "config: learning rate must be positive");
  require(t.batch_size >= 1, "config: batch size must be >= 1");
  require(t.validation_split > 0.0 && t.validation_split < 1.0,
          "config: validation split must lie in (0, 1)");
  require(t.validation_frequency >= 1, "config: validation frequency must be >= 1");
  require(!t.hidden.empty(), "config: hidden layer list must not be empty");
}

std::string scenario_to_json(const ScenarioConfig& config) {
  nlohmann::json doc;
  doc["name"] = config.name;
  doc["m"] = config.m;
  doc["c"] = config.c;
  if (config.theta != 0.0) doc["theta"] = config.theta;
  doc["relays"] = nlohmann::json::array();
  for (const RelaySpec& r : config.relays) {
    nlohmann::json relay;
    relay["d_sr"] = r.d_sr;
    if (r.theta != 0.0) relay["theta"] = r.theta;
    relay["n_reflectors"] = r.n_reflectors;
    doc["relays"].push_back(std::move(relay));
  }
  doc["snr_grid_db"] = config.snr_grid_db;
  doc["schemes"] = nlohmann::json::array();
  for (SchemeId id : config.schemes) doc["schemes"].push_back(scheme_name(id));
  doc["seed"] = config.seed;
  doc["min_bit_errors"] = config.min_bit_errors;
  doc["max_bits"] = config.max_bits;
  nlohmann::json training;
  training["relay_samples"] = config.training.relay_samples;
  training["destination_samples"] = config.training.destination_samples;
  training["relay_iterations"] = config.training.relay_iterations;
  training["destination_iterations"] = config.training.destination_iterations;
  training["learning_rate"] = config.training.learning_rate;
  training["batch_size"] = config.training.batch_size;
  training["validation_split"] = config.training.validation_split;
  training["validation_frequency"] = config.training.validation_frequency;
  training["hidden"] = config.training.hidden;
  doc["training"] = std::move(training);
  return doc.dump(2) + "\n";
}

ScenarioConfig scenario_from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  ScenarioConfig config;
  config.name = doc.value("name", config.name);
  config.m = doc.value("m", config.m);
  config.c = doc.value("c", config.c);
  config.theta = doc.value("theta", 0.0);
  config.relays.clear();
  for (const nlohmann::json& relay : doc.at("relays")) {
    RelaySpec r;
    r.d_sr = relay.at("d_sr").get<double>();
    r.theta = relay.value("theta", 0.0);
    r.n_reflectors = relay.at("n_reflectors").get<int>();
    config.relays.push_back(r);
  }
  config.snr_grid_db = doc.at("snr_grid_db").get<std::vector<double>>();
  config.schemes.clear();
  for (const nlohmann::json& name : doc.at("schemes"))
    config.schemes.push_back(scheme_from_name(name.get<std::string>()));
  config.seed = doc.value("seed", std::uint64_t{1});
  config.min_bit_errors = doc.value("min_bit_errors", config.min_bit_errors);
  config.max_bits = doc.value("max_bits", config.max_bits);
  if (doc.contains("training")) {
    const nlohmann::json& training = doc["training"];
    TrainingSpec& t = config.training;
    t.relay_samples = training.value("relay_samples", t.relay_samples);
    t.destination_samples = training.value("destination_samples", t.destination_samples);
    t.relay_iterations = training.value("relay_iterations", t.relay_iterations);
    t.destination_iterations = training.value("destination_iterations", t.destination_iterations);
    t.learning_rate = training.value("learning_rate", t.learning_rate);
    t.batch_size = training.value("batch_size", t.batch_size);
    t.validation_split = training.value("validation_split", t.validation_split);
    t.validation_frequency = training.value("validation_frequency", t.validation_frequency);
    t.hidden = training.value("hidden", t.hidden);
  }
  validate_scenario(config);
  return config;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config file not found: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return scenario_from_json(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config parse error in " + path + ": " + e.what());
  }
}

void save_scenario(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config: " + path);
  out << scenario_to_json(config);
  if (!out) throw std::runtime_error("write failed for config: " + path);
}

}  // namespace crisim
