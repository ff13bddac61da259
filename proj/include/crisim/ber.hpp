#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crisim/neural.hpp"
#include "crisim/scenario.hpp"

namespace crisim {

// One Monte-Carlo result row. branch is "R1".."RL" for per-relay rows, "best"
// for the selected-relay curve, "ML" / "MRC" for combined detection. A row is
// censored when the bit cap was reached before min_bit_errors errors.
struct BerRow {
  double snr_db = 0.0;
  std::string scheme;
  std::string branch;
  double ber = 0.0;
  long long bits = 0;
  long long errors = 0;
  bool censored = false;
};

struct TrainedModels {
  std::vector<nn::DenseNetwork> relay_nets;  // one per relay, config order
  std::optional<nn::DenseNetwork> destination_rs;
  std::optional<nn::DenseNetwork> destination_mrc;
  int rs_branch = 0;  // branch the RS destination classifier was trained on
};

bool needs_relay_nets(const ScenarioConfig& config);
bool needs_destination_rs(const ScenarioConfig& config);
bool needs_destination_mrc(const ScenarioConfig& config);

// Stable per-point RNG key built from the values that identify the point, so a
// point's channel/noise draws do not depend on grid composition or scheme set.
std::uint64_t point_key(double snr_db, std::uint64_t aux0 = 0, std::uint64_t aux1 = 0);

// Shared-channel Monte-Carlo pass over all requested schemes at one SNR point.
// Trials advance in fixed-size blocks until every row has min_bit_errors
// errors or the bit cap is hit; with threads > 1 blocks are computed in
// parallel waves but always consumed in block order, so output is independent
// of the thread count.
std::vector<BerRow> run_point(const ScenarioConfig& config, const TrainedModels* models,
                              std::span<const SchemeId> schemes, double snr_db,
                              std::uint64_t key, int threads);

std::vector<BerRow> run_ber_point(const ScenarioConfig& config, const TrainedModels* models,
                                  SchemeId scheme, double snr_db, int threads = 1);

// Full grid x configured schemes; rows grouped per point in grid order.
std::vector<BerRow> run_sweep(const ScenarioConfig& config, const TrainedModels* models,
                              int threads = 1);

void write_ber_csv(const std::string& path, const std::vector<BerRow>& rows);

// Trains whatever the config's schemes require (relay phase nets, destination
// classifiers), persists model and history files under dir, and returns the
// loaded set. Training is single-threaded and deterministic per config.
TrainedModels train_models(const ScenarioConfig& config, const std::string& dir);
TrainedModels load_models(const ScenarioConfig& config, const std::string& dir);
bool models_exist(const ScenarioConfig& config, const std::string& dir);
TrainedModels ensure_models(const ScenarioConfig& config, const std::string& dir);

void write_history_csv(const std::string& path, const nn::TrainHistory& history);

}  // namespace crisim
