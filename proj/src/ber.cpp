#include "crisim/ber.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "crisim/channel.hpp"
#include "crisim/datasets.hpp"
#include "crisim/detection.hpp"
#include "crisim/dnn_phases.hpp"
#include "crisim/geometry.hpp"
#include "crisim/modem.hpp"
#include "crisim/rislink.hpp"
#include "crisim/types.hpp"

namespace fs = std::filesystem;

namespace crisim {
namespace {

constexpr int kBlockSymbols = 1024;

// One accumulated result row; "best" rows are synthesized after the run.
struct RowSpec {
  SchemeId scheme;
  std::string branch;
  int relay = -1;  // >= 0 for per-relay rows
};

std::vector<RowSpec> layout_rows(std::span<const SchemeId> schemes, int relay_count) {
  std::vector<RowSpec> rows;
  for (SchemeId scheme : schemes) {
    if (scheme_is_rs(scheme)) {
      for (int l = 0; l < relay_count; ++l)
        rows.push_back({scheme, "R" + std::to_string(l + 1), l});
    } else if (scheme_is_mrc(scheme)) {
      rows.push_back({scheme, "MRC", -1});
    } else {
      rows.push_back({scheme, "ML", -1});
    }
  }
  return rows;
}

struct PointContext {
  const ScenarioConfig* cfg = nullptr;
  const TrainedModels* models = nullptr;
  Constellation con;
  std::vector<RelayGeometry> geom;
  std::vector<RowSpec> rows;
  bool need_ideal = false;
  bool need_dnn = false;
  bool need_dest_rs = false;
  bool need_dest_mrc = false;
  bool need_dnn_mrc = false;
  double noise_scale = 0.0;
  std::uint64_t key = 0;
};

// Reusable per-worker buffers; all sized on first use.
struct BlockScratch {
  std::vector<int> sym;
  std::vector<std::vector<ChannelRealization>> chans;  // [relay][trial]
  std::vector<std::vector<cplx>> noise;                // [relay][trial], unit variance
  std::vector<std::vector<cplx>> e_ideal, y_ideal;     // [relay][trial]
  std::vector<std::vector<cplx>> e_dnn, y_dnn;
  std::vector<std::vector<int>> det_dest_rs;           // [relay][trial]
  std::vector<int> det_dest_mrc;
  std::vector<cplx> gain_buf, y_buf;
  std::vector<long long> errors;                       // per accumulated row
};

int detect_single(cplx y, cplx gain, const Constellation& con) {
  return ml_detect_index({&y, 1}, {&gain, 1}, con);
}

// Destination-classifier decisions for a whole block of observations.
void classify_block(const nn::DenseNetwork& net, std::span<const cplx> y, std::vector<int>& out) {
  nn::Matrix features(static_cast<int>(y.size()), 2);
  for (std::size_t t = 0; t < y.size(); ++t) {
    features.at(static_cast<int>(t), 0) = y[t].real();
    features.at(static_cast<int>(t), 1) = y[t].imag();
  }
  nn::Matrix probs = nn::forward(net, features);
  out.resize(y.size());
  for (int t = 0; t < probs.rows; ++t)
    out[t] = nn::argmax({probs.row(t), static_cast<std::size_t>(probs.cols)});
}

void simulate_block(const PointContext& ctx, std::uint64_t block, BlockScratch& s) {
  const ScenarioConfig& cfg = *ctx.cfg;
  int relay_count = static_cast<int>(cfg.relays.size());
  int t_count = kBlockSymbols;
  int m = ctx.con.m;

  RngStream sym_rng = RngStream::derive(cfg.seed, {stream::kSymbols, ctx.key, block});
  RngStream chan_rng = RngStream::derive(cfg.seed, {stream::kChannel, ctx.key, block});
  RngStream noise_rng = RngStream::derive(cfg.seed, {stream::kNoise, ctx.key, block});

  s.sym.resize(t_count);
  for (int t = 0; t < t_count; ++t) s.sym[t] = static_cast<int>(sym_rng.next_below(m));

  s.chans.resize(relay_count);
  s.noise.resize(relay_count);
  for (int l = 0; l < relay_count; ++l) {
    s.chans[l].resize(t_count);
    s.noise[l].resize(t_count);
  }
  for (int t = 0; t < t_count; ++t)
    for (int l = 0; l < relay_count; ++l)
      s.chans[l][t] = sample_channel(cfg.relays[l].n_reflectors, chan_rng, l);
  for (int t = 0; t < t_count; ++t)
    for (int l = 0; l < relay_count; ++l) s.noise[l][t] = noise_rng.next_complex_gaussian(1.0);

  auto resize_lt = [&](std::vector<std::vector<cplx>>& v) {
    v.resize(relay_count);
    for (auto& inner : v) inner.resize(t_count);
  };

  if (ctx.need_ideal) {
    resize_lt(s.e_ideal);
    resize_lt(s.y_ideal);
    for (int l = 0; l < relay_count; ++l) {
      double scale = std::sqrt(ctx.geom[l].g_sr * ctx.geom[l].g_rd);
      for (int t = 0; t < t_count; ++t) {
        const ChannelRealization& ch = s.chans[l][t];
        // Closed-form phases turn every term into |h||g|, so the aligned sum
        // is real.
        double chi = 0.0;
        for (std::size_t n = 0; n < ch.h.size(); ++n) chi += std::abs(ch.h[n]) * std::abs(ch.g[n]);
        s.e_ideal[l][t] = scale * chi;
        s.y_ideal[l][t] =
            s.e_ideal[l][t] * ctx.con.points[s.sym[t]] + ctx.noise_scale * s.noise[l][t];
      }
    }
  }

  if (ctx.need_dnn) {
    resize_lt(s.e_dnn);
    resize_lt(s.y_dnn);
    for (int l = 0; l < relay_count; ++l) {
      std::vector<cplx> factors =
          dnn_phase_factors(ctx.models->relay_nets[l], s.chans[l]);
      std::size_t n = static_cast<std::size_t>(cfg.relays[l].n_reflectors);
      for (int t = 0; t < t_count; ++t) {
        s.e_dnn[l][t] = effective_gain_from_factors(
            s.chans[l][t], std::span<const cplx>(factors).subspan(t * n, n), ctx.geom[l]);
        s.y_dnn[l][t] =
            s.e_dnn[l][t] * ctx.con.points[s.sym[t]] + ctx.noise_scale * s.noise[l][t];
      }
    }
  }

  if (ctx.need_dest_rs) {
    s.det_dest_rs.resize(relay_count);
    for (int l = 0; l < relay_count; ++l)
      classify_block(*ctx.models->destination_rs, s.y_dnn[l], s.det_dest_rs[l]);
  }
  if (ctx.need_dest_mrc) {
    static thread_local std::vector<cplx> y_mrc;
    y_mrc.resize(t_count);
    for (int t = 0; t < t_count; ++t) {
      cplx acc = 0.0;
      for (int l = 0; l < relay_count; ++l) acc += std::conj(s.e_dnn[l][t]) * s.y_dnn[l][t];
      y_mrc[t] = acc;
    }
    classify_block(*ctx.models->destination_mrc, y_mrc, s.det_dest_mrc);
  }

  s.gain_buf.resize(relay_count);
  s.y_buf.resize(relay_count);
  s.errors.assign(ctx.rows.size(), 0);
  for (std::size_t r = 0; r < ctx.rows.size(); ++r) {
    const RowSpec& row = ctx.rows[r];
    bool dnn_phase = scheme_uses_dnn_phases(row.scheme);
    const auto& e = dnn_phase ? s.e_dnn : s.e_ideal;
    const auto& y = dnn_phase ? s.y_dnn : s.y_ideal;
    long long errors = 0;
    for (int t = 0; t < t_count; ++t) {
      int det;
      if (scheme_uses_dnn_detector(row.scheme)) {
        det = row.relay >= 0 ? s.det_dest_rs[row.relay][t] : s.det_dest_mrc[t];
      } else if (row.relay >= 0) {
        det = detect_single(y[row.relay][t], e[row.relay][t], ctx.con);
      } else if (scheme_is_mrc(row.scheme)) {
        cplx y_c = 0.0;
        double coeff = 0.0;
        for (int l = 0; l < relay_count; ++l) {
          y_c += std::conj(e[l][t]) * y[l][t];
          coeff += std::norm(e[l][t]);
        }
        det = detect_single(y_c, coeff, ctx.con);
      } else {  // vector ML across relays
        for (int l = 0; l < relay_count; ++l) {
          s.y_buf[l] = y[l][t];
          s.gain_buf[l] = e[l][t];
        }
        det = ml_detect_index(s.y_buf, s.gain_buf, ctx.con);
      }
      errors += std::popcount(ctx.con.bit_patterns[s.sym[t]] ^ ctx.con.bit_patterns[det]);
    }
    s.errors[r] = errors;
  }
}

}  // namespace

bool needs_relay_nets(const ScenarioConfig& config) {
  return std::any_of(config.schemes.begin(), config.schemes.end(), scheme_uses_dnn_phases);
}

bool needs_destination_rs(const ScenarioConfig& config) {
  return std::any_of(config.schemes.begin(), config.schemes.end(),
                     [](SchemeId s) { return s == SchemeId::kDnnrdRs; });
}

bool needs_destination_mrc(const ScenarioConfig& config) {
  return std::any_of(config.schemes.begin(), config.schemes.end(),
                     [](SchemeId s) { return s == SchemeId::kDnnrdMrc; });
}

std::uint64_t point_key(double snr_db, std::uint64_t aux0, std::uint64_t aux1) {
  return RngStream::derive(0x706f696e74ULL, {std::bit_cast<std::uint64_t>(snr_db), aux0, aux1})
      .next_u64();
}

std::vector<BerRow> run_point(const ScenarioConfig& config, const TrainedModels* models,
                              std::span<const SchemeId> schemes, double snr_db,
                              std::uint64_t key, int threads) {
  validate_scenario(config);
  require(!schemes.empty(), "run_point: no schemes requested");
  require(threads >= 1, "run_point: thread count must be >= 1");
  int relay_count = static_cast<int>(config.relays.size());

  PointContext ctx;
  ctx.cfg = &config;
  ctx.models = models;
  ctx.con = build_constellation(config.m);
  for (const RelaySpec& r : config.relays)
    ctx.geom.push_back(place_relay(r.d_sr, relay_theta(config, r), config.c));
  ctx.rows = layout_rows(schemes, relay_count);
  for (SchemeId s : schemes) {
    ctx.need_ideal |= !scheme_uses_dnn_phases(s);
    ctx.need_dnn |= scheme_uses_dnn_phases(s);
    ctx.need_dest_rs |= s == SchemeId::kDnnrdRs;
    ctx.need_dest_mrc |= s == SchemeId::kDnnrdMrc;
  }
  if (ctx.need_dnn) {
    require(models != nullptr &&
                models->relay_nets.size() == static_cast<std::size_t>(relay_count),
            "run_point: DNN phase scheme requested without trained relay networks");
  }
  if (ctx.need_dest_rs)
    require(models != nullptr && models->destination_rs.has_value(),
            "run_point: DNNRD-RS requested without a trained destination classifier");
  if (ctx.need_dest_mrc)
    require(models != nullptr && models->destination_mrc.has_value(),
            "run_point: DNNRD-MRC requested without a trained destination classifier");
  double n0 = std::pow(10.0, -snr_db / 10.0);
  ctx.noise_scale = std::sqrt(n0);
  ctx.key = key;

  std::vector<long long> errors(ctx.rows.size(), 0);
  long long bits = 0;
  const long long bits_per_block = static_cast<long long>(kBlockSymbols) * ctx.con.bits_per_symbol;

  int wave = threads;
  std::vector<BlockScratch> scratch(wave);
  bool done = false;
  for (std::uint64_t base = 0; !done; base += wave) {
    if (wave == 1) {
      simulate_block(ctx, base, scratch[0]);
    } else {
      std::vector<std::thread> workers;
      workers.reserve(wave);
      for (int w = 0; w < wave; ++w)
        workers.emplace_back(
            [&, w] { simulate_block(ctx, base + static_cast<std::uint64_t>(w), scratch[w]); });
      for (std::thread& t : workers) t.join();
    }
    // Blocks are always consumed in index order; later blocks of a wave are
    // discarded once the stopping rule fires, so results do not depend on the
    // wave width.
    for (int w = 0; w < wave && !done; ++w) {
      for (std::size_t r = 0; r < errors.size(); ++r) errors[r] += scratch[w].errors[r];
      bits += bits_per_block;
      long long worst = *std::min_element(errors.begin(), errors.end());
      done = bits >= config.max_bits || worst >= config.min_bit_errors;
    }
  }

  std::vector<BerRow> out;
  std::size_t r = 0;
  for (SchemeId scheme : schemes) {
    std::size_t out_first = out.size();
    int row_count = scheme_is_rs(scheme) ? relay_count : 1;
    for (int i = 0; i < row_count; ++i, ++r) {
      BerRow row;
      row.snr_db = snr_db;
      row.scheme = scheme_name(scheme);
      row.branch = ctx.rows[r].branch;
      row.bits = bits;
      row.errors = errors[r];
      row.ber = static_cast<double>(row.errors) / static_cast<double>(row.bits);
      row.censored = row.errors < config.min_bit_errors;
      out.push_back(std::move(row));
    }
    if (scheme_is_rs(scheme)) {
      // Empirical best-BER selection over the per-relay rows just emitted;
      // ties go to the lowest relay index.
      std::size_t best = out_first;
      for (std::size_t i = out_first; i < out.size(); ++i)
        if (out[i].errors < out[best].errors) best = i;
      BerRow row = out[best];
      row.branch = "best";
      out.push_back(std::move(row));
    }
  }
  return out;
}

std::vector<BerRow> run_ber_point(const ScenarioConfig& config, const TrainedModels* models,
                                  SchemeId scheme, double snr_db, int threads) {
  return run_point(config, models, {&scheme, 1}, snr_db, point_key(snr_db), threads);
}

std::vector<BerRow> run_sweep(const ScenarioConfig& config, const TrainedModels* models,
                              int threads) {
  validate_scenario(config);
  std::vector<BerRow> rows;
  for (double snr : config.snr_grid_db) {
    std::vector<BerRow> point =
        run_point(config, models, config.schemes, snr, point_key(snr), threads);
    rows.insert(rows.end(), std::make_move_iterator(point.begin()),
                std::make_move_iterator(point.end()));
  }
  return rows;
}

void write_ber_csv(const std::string& path, const std::vector<BerRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_ber_csv: cannot open " + path);
  out << "snr_db,scheme,branch,ber,bits,errors,censored\n";
  char buf[64];
  for (const BerRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g", r.snr_db);
    out << buf << ',' << r.scheme << ',' << r.branch << ',';
    std::snprintf(buf, sizeof buf, "%.10g", r.ber);
    out << buf << ',' << r.bits << ',' << r.errors << ',' << (r.censored ? 1 : 0) << '\n';
  }
  if (!out) throw std::runtime_error("write_ber_csv: write failed for " + path);
}

void write_history_csv(const std::string& path, const nn::TrainHistory& history) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_history_csv: cannot open " + path);
  out << "iteration,loss,metric,val_loss,val_metric\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
  };
  for (const nn::TrainRecord& r : history.records) {
    out << r.iteration << ',' << num(r.loss) << ',' << num(r.metric) << ',';
    if (r.has_validation)
      out << num(r.validation_loss) << ',' << num(r.validation_metric);
    else
      out << ',';
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_history_csv: write failed for " + path);
}

namespace {

std::string relay_model_path(const std::string& dir, int l) {
  return dir + "/relay_dnn_" + std::to_string(l + 1) + ".json";
}

int probe_best_branch(const ScenarioConfig& config) {
  if (config.relays.size() == 1) return 0;
  ScenarioConfig probe = config;
  probe.min_bit_errors = 100;
  probe.max_bits = 200000;
  double snr = config.snr_grid_db[config.snr_grid_db.size() / 2];
  SchemeId scheme = SchemeId::kCrisRs;
  probe.schemes = {scheme};
  std::vector<BerRow> rows =
      run_point(probe, nullptr, {&scheme, 1}, snr, point_key(snr, 0, stream::kProbe), 1);
  int best = 0;
  for (std::size_t l = 0; l + 1 < rows.size(); ++l)  // last row is "best"
    if (rows[l].errors < rows[best].errors) best = static_cast<int>(l);
  return best;
}

nn::TrainConfig train_config_from(const TrainingSpec& t, int iterations, std::uint64_t seed) {
  nn::TrainConfig tc;
  tc.learning_rate = t.learning_rate;
  tc.batch_size = t.batch_size;
  tc.iteration_steps = iterations;
  tc.validation_split = t.validation_split;
  tc.validation_frequency = t.validation_frequency;
  tc.seed = seed;
  return tc;
}

}  // namespace

TrainedModels train_models(const ScenarioConfig& config, const std::string& dir) {
  validate_scenario(config);
  fs::create_directories(dir);
  TrainedModels models;
  const TrainingSpec& training = config.training;

  if (needs_relay_nets(config)) {
    for (std::size_t l = 0; l < config.relays.size(); ++l) {
      RngStream data_rng = RngStream::derive(config.seed, {stream::kRelayData, l});
      std::vector<RelaySample> data = build_relay_dataset(training.relay_samples, data_rng);
      nn::DenseNetwork net =
          nn::make_network(4, training.hidden, 2, nn::Activation::kRelu, nn::Head::kRegression,
                           RngStream::derive(config.seed, {stream::kInit, l}));
      nn::TrainConfig tc =
          train_config_from(training, training.relay_iterations,
                            RngStream::derive(config.seed, {stream::kTrain, l}).next_u64());
      nn::TrainHistory history = nn::train(net, relay_features(data), relay_targets(data), tc);
      nn::save_network(net, relay_model_path(dir, static_cast<int>(l)));
      write_history_csv(dir + "/relay_dnn_" + std::to_string(l + 1) + "_history.csv", history);
      models.relay_nets.push_back(std::move(net));
    }
  }

  if (needs_destination_rs(config) || needs_destination_mrc(config)) {
    models.rs_branch = probe_best_branch(config);
    DestinationScenario scenario;
    scenario.constellation = build_constellation(config.m);
    for (std::size_t l = 0; l < config.relays.size(); ++l) {
      const RelaySpec& r = config.relays[l];
      scenario.branches.push_back(
          {place_relay(r.d_sr, relay_theta(config, r), config.c), r.n_reflectors});
      scenario.relay_nets.push_back(&models.relay_nets[l]);
    }
    scenario.snr_grid_db = config.snr_grid_db;

    auto train_destination = [&](bool use_mrc, const std::string& stem, std::uint64_t tag) {
      scenario.use_mrc = use_mrc;
      scenario.selected_branch = models.rs_branch;
      RngStream data_rng = RngStream::derive(config.seed, {stream::kDestinationData, tag});
      std::vector<DestinationSample> data =
          build_destination_dataset(training.destination_samples, scenario, data_rng);
      nn::DenseNetwork net =
          nn::make_network(2, training.hidden, config.m, nn::Activation::kRelu,
                           nn::Head::kClassification,
                           RngStream::derive(config.seed, {stream::kInit, 1000 + tag}));
      nn::TrainConfig tc = train_config_from(
          training, training.destination_iterations,
          RngStream::derive(config.seed, {stream::kTrain, 1000 + tag}).next_u64());
      nn::TrainHistory history =
          nn::train(net, destination_features(data), destination_one_hot(data, config.m), tc);
      nn::save_network(net, dir + "/" + stem + ".json");
      write_history_csv(dir + "/" + stem + "_history.csv", history);
      return net;
    };

    if (needs_destination_rs(config))
      models.destination_rs = train_destination(false, "destination_dnn_rs", 0);
    if (needs_destination_mrc(config))
      models.destination_mrc = train_destination(true, "destination_dnn_mrc", 1);
  }

  std::ofstream manifest(dir + "/models.json");
  manifest << "{\n  \"schema_version\": 1,\n  \"scenario\": \"" << config.name
           << "\",\n  \"relay_count\": " << models.relay_nets.size()
           << ",\n  \"rs_branch\": " << models.rs_branch << "\n}\n";
  return models;
}

bool models_exist(const ScenarioConfig& config, const std::string& dir) {
  if (needs_relay_nets(config))
    for (std::size_t l = 0; l < config.relays.size(); ++l)
      if (!fs::exists(relay_model_path(dir, static_cast<int>(l)))) return false;
  if (needs_destination_rs(config) && !fs::exists(dir + "/destination_dnn_rs.json")) return false;
  if (needs_destination_mrc(config) && !fs::exists(dir + "/destination_dnn_mrc.json")) return false;
  return true;
}

TrainedModels load_models(const ScenarioConfig& config, const std::string& dir) {
  TrainedModels models;
  if (needs_relay_nets(config)) {
    for (std::size_t l = 0; l < config.relays.size(); ++l) {
      nn::DenseNetwork net = nn::load_network(relay_model_path(dir, static_cast<int>(l)));
      require(net.input_dim() == 4 && net.output_dim() == 2,
              "load_models: relay network has wrong dimensions");
      models.relay_nets.push_back(std::move(net));
    }
  }
  auto load_destination = [&](const std::string& stem) {
    nn::DenseNetwork net = nn::load_network(dir + "/" + stem + ".json");
    require(net.input_dim() == 2 && net.output_dim() == config.m,
            "load_models: destination network has wrong dimensions");
    return net;
  };
  if (needs_destination_rs(config)) models.destination_rs = load_destination("destination_dnn_rs");
  if (needs_destination_mrc(config))
    models.destination_mrc = load_destination("destination_dnn_mrc");
  return models;
}

TrainedModels ensure_models(const ScenarioConfig& config, const std::string& dir) {
  if (models_exist(config, dir)) return load_models(config, dir);
  return train_models(config, dir);
}

}  // namespace crisim
