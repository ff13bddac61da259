#pragma once

#include <string>
#include <vector>

#include "crisim/ber.hpp"
#include "crisim/scenario.hpp"
#include "crisim/types.hpp"

namespace crisim {

// Built-in desk-scale configs for the BER figures (6-9). Figure 9 compares two
// modulation orders and yields two configs; the others yield one. Bit caps and
// training sizes are chosen so each figure finishes in minutes on one core;
// raise them via a config file for full-scale runs.
std::vector<ScenarioConfig> figure_scenarios(int figure);

// Relay-position sweep at fixed SNR (single relay, BER vs d_sr per path-loss
// exponent).
struct Fig10Config {
  int m = 4;
  int n_reflectors = 8;
  double snr_db = -20.0;
  double theta = kPi / 2;
  std::vector<double> d_values;
  std::vector<double> c_values;
  std::vector<SchemeId> schemes;
  std::uint64_t seed = 1;
  long long min_bit_errors = 200;
  long long max_bits = 100000;
  TrainingSpec training;
};

Fig10Config default_fig10();

struct Fig10Row {
  double c = 0.0;
  double d_sr = 0.0;
  BerRow row;
};

bool fig10_needs_relay_net(const Fig10Config& config);

// One-relay scenario whose train_models() produces the relay net a DNN-phase
// fig10 run needs (the relay dataset does not depend on geometry).
ScenarioConfig fig10_training_scenario(const Fig10Config& config);

// Channel/noise draws are keyed by (snr, d) only, so the curves for different
// path-loss exponents are paired sample-for-sample.
std::vector<Fig10Row> run_fig10(const Fig10Config& config, const TrainedModels* models,
                                int threads = 1);

void write_fig10_csv(const std::string& path, const std::vector<Fig10Row>& rows);

// Runs one canned figure end to end: ensures models under models_dir, runs the
// simulation, writes CSV files into out_dir. Returns the files written.
// Figure 5 is the complexity table; 6-10 are the BER figures.
std::vector<std::string> reproduce_figure(int figure, std::uint64_t seed,
                                          const std::string& out_dir,
                                          const std::string& models_dir, int threads);

}  // namespace crisim
