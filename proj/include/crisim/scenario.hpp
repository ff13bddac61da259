#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace crisim {

// Scheme naming: CRIS = closed-form phases, DNNR = DNN phases, DNNRD = DNN
// phases + DNN destination detector; the suffix picks the combining mode.
enum class SchemeId {
  kCrisRs,
  kCrisMl,
  kCrisMrc,
  kDnnrRs,
  kDnnrMrc,
  kDnnrdRs,
  kDnnrdMrc,
};

std::string scheme_name(SchemeId id);
SchemeId scheme_from_name(const std::string& name);
bool scheme_uses_dnn_phases(SchemeId id);
bool scheme_uses_dnn_detector(SchemeId id);
bool scheme_is_rs(SchemeId id);
bool scheme_is_mrc(SchemeId id);

struct RelaySpec {
  double d_sr = 0.5;
  double theta = 0.0;  // radians; 0 means "use the config default (pi/2)"
  int n_reflectors = 8;
};

struct TrainingSpec {
  int relay_samples = 360000;
  int destination_samples = 45000;
  int relay_iterations = 300;
  int destination_iterations = 150;
  double learning_rate = 0.003;
  int batch_size = 256;
  double validation_split = 0.1;
  int validation_frequency = 10;
  std::vector<int> hidden = {256, 256, 256, 256};
};

struct ScenarioConfig {
  std::string name = "scenario";
  int m = 4;
  double c = 4.0;  // path loss exponent
  double theta = 0.0;  // default relay angle; 0 resolves to pi/2
  std::vector<RelaySpec> relays;
  std::vector<double> snr_grid_db;
  std::vector<SchemeId> schemes;
  std::uint64_t seed = 1;
  long long min_bit_errors = 200;
  long long max_bits = 10000000;
  TrainingSpec training;
};

// Throws with a descriptive message on any violated constraint (empty relay
// list, non-increasing SNR grid, unsupported order, ...).
void validate_scenario(const ScenarioConfig& config);

// JSON round-trip; load validates. Missing files surface the path.
ScenarioConfig load_scenario(const std::string& path);
void save_scenario(const ScenarioConfig& config, const std::string& path);
std::string scenario_to_json(const ScenarioConfig& config);
ScenarioConfig scenario_from_json(const std::string& text);

// Effective theta for one relay (its own value, else the config default).
double relay_theta(const ScenarioConfig& config, const RelaySpec& relay);

}  // namespace crisim
