#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "crisim/ber.hpp"
#include "crisim/complexity.hpp"
#include "crisim/datasets.hpp"
#include "crisim/figures.hpp"
#include "crisim/geometry.hpp"
#include "crisim/modem.hpp"
#include "crisim/rng.hpp"
#include "crisim/scenario.hpp"

namespace fs = std::filesystem;
using namespace crisim;

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("CRISIM_OUT_DIR");
  return (env != nullptr && *env != '\0') ? std::string(env) : std::string("out");
}

int parse_figure(std::string text) {
  if (text.rfind("fig", 0) == 0) text.erase(0, 3);
  try {
    std::size_t used = 0;
    int fig = std::stoi(text, &used);
    if (used == text.size() && fig >= 5 && fig <= 10) return fig;
  } catch (const std::exception&) {
  }
  throw std::runtime_error("unknown figure (expected fig5..fig10)");
}

std::string default_models_dir(const std::string& out, const ScenarioConfig& cfg) {
  return out + "/models/" + cfg.name + "_seed" + std::to_string(cfg.seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS cooperative-relay link simulator"};
  app.require_subcommand(1);

  // gen-data ------------------------------------------------------------
  auto* gen = app.add_subcommand("gen-data", "Emit a training dataset as CSV");
  std::string gen_kind = "relay";
  std::string gen_config;
  int gen_count = 0;
  std::uint64_t gen_seed = 1;
  std::string gen_out = default_out_dir();
  bool gen_mrc = false;
  int gen_branch = 0;
  gen->add_option("--kind", gen_kind, "relay or destination")
      ->check(CLI::IsMember({"relay", "destination"}));
  gen->add_option("--config", gen_config, "scenario file (required for destination data)");
  gen->add_option("--count", gen_count, "sample count (default from config/100000)");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "output directory");
  gen->add_flag("--mrc", gen_mrc, "destination data: combine branches with MRC");
  gen->add_option("--branch", gen_branch, "destination data: selected branch (0-based)");
  gen->callback([&] {
    fs::create_directories(gen_out);
    if (gen_kind == "relay") {
      int count = gen_count > 0 ? gen_count : 100000;
      RngStream rng = RngStream::derive(gen_seed, {stream::kRelayData, 0});
      std::string path = gen_out + "/relay_dataset.csv";
      export_relay_csv(path, build_relay_dataset(count, rng));
      std::printf("wrote %s\n", path.c_str());
      return;
    }
    if (gen_config.empty())
      throw std::runtime_error("gen-data --kind destination requires --config");
    ScenarioConfig cfg = load_scenario(gen_config);
    if (gen->count("--seed") > 0) cfg.seed = gen_seed;
    DestinationScenario scenario;
    scenario.constellation = build_constellation(cfg.m);
    for (const RelaySpec& r : cfg.relays)
      scenario.branches.push_back(
          {place_relay(r.d_sr, relay_theta(cfg, r), cfg.c), r.n_reflectors});
    scenario.snr_grid_db = cfg.snr_grid_db;
    scenario.use_mrc = gen_mrc;
    scenario.selected_branch = gen_branch;  // closed-form phases: relay_nets left empty
    int count = gen_count > 0 ? gen_count : cfg.training.destination_samples;
    RngStream rng =
        RngStream::derive(cfg.seed, {stream::kDestinationData, gen_mrc ? 1ULL : 0ULL});
    std::string path = gen_out + "/destination_dataset.csv";
    export_destination_csv(path, build_destination_dataset(count, scenario, rng));
    std::printf("wrote %s\n", path.c_str());
  });

  // train ---------------------------------------------------------------
  auto* train = app.add_subcommand("train", "Train and persist the scenario's networks");
  std::string train_config;
  std::uint64_t train_seed = 0;
  std::string train_out = default_out_dir();
  std::string train_models_dir;
  train->add_option("--config", train_config, "scenario file")->required();
  train->add_option("--seed", train_seed, "override the config seed");
  train->add_option("--out", train_out, "output directory");
  train->add_option("--models", train_models_dir, "model directory override");
  train->callback([&] {
    ScenarioConfig cfg = load_scenario(train_config);
    if (train->count("--seed") > 0) cfg.seed = train_seed;
    std::string dir =
        train_models_dir.empty() ? default_models_dir(train_out, cfg) : train_models_dir;
    train_models(cfg, dir);
    std::printf("models written to %s\n", dir.c_str());
  });

  // ber -----------------------------------------------------------------
  auto* ber = app.add_subcommand("ber", "Run the BER sweep for a scenario");
  std::string ber_config;
  std::uint64_t ber_seed = 0;
  std::string ber_out = default_out_dir();
  std::string ber_models_dir;
  int ber_threads = 1;
  ber->add_option("--config", ber_config, "scenario file")->required();
  ber->add_option("--seed", ber_seed, "override the config seed");
  ber->add_option("--out", ber_out, "output directory");
  ber->add_option("--models", ber_models_dir, "model directory (trained on demand)");
  ber->add_option("--threads", ber_threads, "worker threads")->check(CLI::PositiveNumber);
  ber->callback([&] {
    ScenarioConfig cfg = load_scenario(ber_config);
    if (ber->count("--seed") > 0) cfg.seed = ber_seed;
    fs::create_directories(ber_out);
    TrainedModels models;
    const TrainedModels* models_ptr = nullptr;
    if (needs_relay_nets(cfg) || needs_destination_rs(cfg) || needs_destination_mrc(cfg)) {
      std::string dir =
          ber_models_dir.empty() ? default_models_dir(ber_out, cfg) : ber_models_dir;
      models = ensure_models(cfg, dir);
      models_ptr = &models;
    }
    std::string path = ber_out + "/" + cfg.name + "_ber.csv";
    write_ber_csv(path, run_sweep(cfg, models_ptr, ber_threads));
    std::printf("wrote %s\n", path.c_str());
  });

  // complexity ----------------------------------------------------------
  auto* cplx_cmd = app.add_subcommand("complexity", "Emit the detection op-count table");
  std::string cplx_config;
  std::string cplx_out = default_out_dir();
  cplx_cmd->add_option("--config", cplx_config, "scenario/profile set (JSON)");
  cplx_cmd->add_option("--out", cplx_out, "output directory");
  cplx_cmd->callback([&] {
    std::vector<ComplexityScenario> scenarios = standard_scenarios();
    std::vector<NamedDnnProfile> profiles = standard_profiles();
    if (!cplx_config.empty()) std::tie(scenarios, profiles) = load_complexity_config(cplx_config);
    std::vector<ComplexityRow> rows = complexity_table(scenarios, profiles);
    fs::create_directories(cplx_out);
    std::string path = cplx_out + "/complexity.csv";
    write_complexity_csv(path, rows);
    for (const ComplexityRow& r : rows)
      std::printf("%-6s %-3s %-28s %lld\n", r.scheme.c_str(), r.scenario.c_str(),
                  r.parameters.c_str(), r.count);
    std::printf("wrote %s\n", path.c_str());
  });

  // geometry ------------------------------------------------------------
  auto* geo = app.add_subcommand("geometry", "Print relay placements and path gains");
  std::string geo_config;
  geo->add_option("--config", geo_config, "scenario file")->required();
  geo->callback([&] {
    ScenarioConfig cfg = load_scenario(geo_config);
    validate_scenario(cfg);
    std::printf("%-5s %8s %8s %8s %12s %12s %12s\n", "relay", "d_sr", "theta", "d_rd", "g_sr",
                "g_rd", "g_sr*g_rd");
    for (std::size_t l = 0; l < cfg.relays.size(); ++l) {
      const RelaySpec& r = cfg.relays[l];
      RelayGeometry g = place_relay(r.d_sr, relay_theta(cfg, r), cfg.c);
      std::printf("R%-4zu %8.4f %8.4f %8.4f %12.6g %12.6g %12.6g\n", l + 1, g.d_sr, g.theta,
                  g.d_rd, g.g_sr, g.g_rd, g.g_sr * g.g_rd);
    }
  });

  // reproduce -----------------------------------------------------------
  auto* rep = app.add_subcommand("reproduce", "Reproduce a canned figure at desk scale");
  std::string rep_figure;
  std::uint64_t rep_seed = 1;
  std::string rep_out = default_out_dir();
  std::string rep_models_dir;
  int rep_threads = 1;
  rep->add_option("figure", rep_figure, "fig5..fig10")->required();
  rep->add_option("--seed", rep_seed, "RNG seed");
  rep->add_option("--out", rep_out, "output directory");
  rep->add_option("--models", rep_models_dir, "model cache directory");
  rep->add_option("--threads", rep_threads, "worker threads")->check(CLI::PositiveNumber);
  rep->callback([&] {
    std::string models = rep_models_dir.empty() ? rep_out + "/models" : rep_models_dir;
    for (const std::string& path :
         reproduce_figure(parse_figure(rep_figure), rep_seed, rep_out, models, rep_threads))
      std::printf("wrote %s\n", path.c_str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
