#include "crisim/figures.hpp"

#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "crisim/complexity.hpp"
#include "crisim/types.hpp"

namespace fs = std::filesystem;

namespace crisim {
namespace {

// Shrunk training budget shared by all canned figures; the relay net keeps the
// full 4x256 architecture but trains on 1e5 samples instead of 3.6e5.
TrainingSpec desk_training() {
  TrainingSpec t;
  t.relay_samples = 100000;
  t.destination_samples = 20000;
  t.relay_iterations = 300;
  t.destination_iterations = 300;
  return t;
}

std::vector<double> grid(double first, double last, double step) {
  std::vector<double> g;
  for (double v = first; v <= last + 1e-9; v += step) g.push_back(v);
  return g;
}

ScenarioConfig base_scenario(const std::string& name) {
  ScenarioConfig cfg;
  cfg.name = name;
  cfg.m = 4;
  cfg.c = 4.0;
  cfg.theta = kPi / 2;
  cfg.seed = 1;
  cfg.min_bit_errors = 200;
  cfg.training = desk_training();
  return cfg;
}

}  // namespace

std::vector<ScenarioConfig> figure_scenarios(int figure) {
  switch (figure) {
    case 6: {
      ScenarioConfig cfg = base_scenario("fig6");
      cfg.relays = {{0.2, 0.0, 8}, {0.5, 0.0, 8}};
      cfg.snr_grid_db = grid(-40.0, -12.0, 4.0);
      cfg.schemes = {SchemeId::kCrisRs,  SchemeId::kCrisMl,   SchemeId::kCrisMrc,
                     SchemeId::kDnnrRs,  SchemeId::kDnnrdRs,  SchemeId::kDnnrdMrc};
      cfg.max_bits = 100000;
      return {cfg};
    }
    case 7: {
      ScenarioConfig cfg = base_scenario("fig7");
      cfg.relays = {{0.2, 0.0, 32}, {0.5, 0.0, 32}};
      cfg.snr_grid_db = grid(-46.0, -22.0, 4.0);
      cfg.schemes = {SchemeId::kCrisRs,  SchemeId::kCrisMl,   SchemeId::kCrisMrc,
                     SchemeId::kDnnrRs,  SchemeId::kDnnrdRs,  SchemeId::kDnnrdMrc};
      cfg.max_bits = 50000;
      return {cfg};
    }
    case 8: {
      ScenarioConfig cfg = base_scenario("fig8");
      cfg.relays = {{0.4, 0.0, 8}, {0.55, 0.0, 8}, {0.65, 0.0, 8}, {0.2, 0.0, 8}};
      cfg.snr_grid_db = grid(-40.0, -16.0, 4.0);
      cfg.schemes = {SchemeId::kCrisRs, SchemeId::kDnnrRs};
      cfg.max_bits = 50000;
      return {cfg};
    }
    case 9: {
      ScenarioConfig m4 = base_scenario("fig9_m4");
      m4.relays = {{0.9, 0.0, 8}, {0.35, 0.0, 8}};
      m4.snr_grid_db = grid(-36.0, -12.0, 4.0);
      m4.schemes = {SchemeId::kCrisRs, SchemeId::kDnnrRs, SchemeId::kDnnrdRs};
      m4.max_bits = 100000;
      ScenarioConfig m8 = m4;
      m8.name = "fig9_m8";
      m8.m = 8;
      m8.snr_grid_db = grid(-32.0, -8.0, 4.0);
      return {m4, m8};
    }
    default:
      throw std::invalid_argument("figure_scenarios: no scenario for figure " +
                                  std::to_string(figure));
  }
}

Fig10Config default_fig10() {
  Fig10Config cfg;
  cfg.d_values = grid(0.1, 0.9, 0.1);
  cfg.c_values = {3.0, 4.0};
  // No DNN destination here: that classifier is geometry-specific and would
  // need one training run per (c, d) point.
  cfg.schemes = {SchemeId::kCrisRs, SchemeId::kDnnrRs};
  cfg.training = desk_training();
  return cfg;
}

bool fig10_needs_relay_net(const Fig10Config& config) {
  for (SchemeId s : config.schemes)
    if (scheme_uses_dnn_phases(s)) return true;
  return false;
}

ScenarioConfig fig10_training_scenario(const Fig10Config& config) {
  ScenarioConfig cfg;
  cfg.name = "fig10_relay";
  cfg.m = config.m;
  cfg.theta = config.theta;
  cfg.relays = {{0.5, 0.0, config.n_reflectors}};
  cfg.snr_grid_db = {config.snr_db};
  cfg.schemes = {SchemeId::kDnnrRs};
  cfg.seed = config.seed;
  cfg.training = config.training;
  return cfg;
}

std::vector<Fig10Row> run_fig10(const Fig10Config& config, const TrainedModels* models,
                                int threads) {
  require(!config.d_values.empty() && !config.c_values.empty(),
          "run_fig10: empty sweep axis");
  require(!config.schemes.empty(), "run_fig10: no schemes requested");
  for (SchemeId s : config.schemes)
    require(!scheme_uses_dnn_detector(s),
            "run_fig10: DNN destination schemes are not supported in the position sweep");
  std::vector<Fig10Row> out;
  for (double c : config.c_values) {
    for (double d : config.d_values) {
      ScenarioConfig cfg;
      cfg.name = "fig10";
      cfg.m = config.m;
      cfg.c = c;
      cfg.theta = config.theta;
      cfg.relays = {{d, 0.0, config.n_reflectors}};
      cfg.snr_grid_db = {config.snr_db};
      cfg.schemes = config.schemes;
      cfg.seed = config.seed;
      cfg.min_bit_errors = config.min_bit_errors;
      cfg.max_bits = config.max_bits;
      std::uint64_t key = point_key(config.snr_db, std::bit_cast<std::uint64_t>(d));
      std::vector<BerRow> rows =
          run_point(cfg, models, cfg.schemes, config.snr_db, key, threads);
      for (BerRow& row : rows) out.push_back({c, d, std::move(row)});
    }
  }
  return out;
}

void write_fig10_csv(const std::string& path, const std::vector<Fig10Row>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_fig10_csv: cannot open " + path);
  out << "c,d_sr,snr_db,scheme,branch,ber,bits,errors,censored\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
  };
  for (const Fig10Row& r : rows) {
    out << num(r.c) << ',' << num(r.d_sr) << ',' << num(r.row.snr_db) << ',' << r.row.scheme
        << ',' << r.row.branch << ',' << num(r.row.ber) << ',' << r.row.bits << ','
        << r.row.errors << ',' << (r.row.censored ? 1 : 0) << '\n';
  }
  if (!out) throw std::runtime_error("write_fig10_csv: write failed for " + path);
}

std::vector<std::string> reproduce_figure(int figure, std::uint64_t seed,
                                          const std::string& out_dir,
                                          const std::string& models_dir, int threads) {
  fs::create_directories(out_dir);
  std::vector<std::string> written;

  if (figure == 5) {
    std::string path = out_dir + "/fig5_complexity.csv";
    write_complexity_csv(path, complexity_table(standard_scenarios(), standard_profiles()));
    written.push_back(path);
    return written;
  }

  if (figure == 10) {
    Fig10Config cfg = default_fig10();
    cfg.seed = seed;
    TrainedModels models;
    const TrainedModels* models_ptr = nullptr;
    if (fig10_needs_relay_net(cfg)) {
      ScenarioConfig trainer = fig10_training_scenario(cfg);
      models = ensure_models(trainer,
                             models_dir + "/" + trainer.name + "_seed" + std::to_string(seed));
      models_ptr = &models;
    }
    std::string path = out_dir + "/fig10_ber.csv";
    write_fig10_csv(path, run_fig10(cfg, models_ptr, threads));
    written.push_back(path);
    return written;
  }

  // Model caches are keyed by seed so a stale cache from another seed can
  // never leak into a reproduction run.
  for (ScenarioConfig cfg : figure_scenarios(figure)) {
    cfg.seed = seed;
    TrainedModels models =
        ensure_models(cfg, models_dir + "/" + cfg.name + "_seed" + std::to_string(seed));
    std::string path = out_dir + "/" + cfg.name + "_ber.csv";
    write_ber_csv(path, run_sweep(cfg, &models, threads));
    written.push_back(path);
  }
  return written;
}

}  // namespace crisim
