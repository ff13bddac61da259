#include "crisim/datasets.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "crisim/detection.hpp"
#include "crisim/dnn_phases.hpp"
#include "crisim/types.hpp"

namespace crisim {
namespace {

constexpr int kChunk = 4096;  // bounds memory for batched DNN-phase inference

void write_csv_line(std::ofstream& out, std::span<const double> values, int label = -1) {
  char buf[32];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", values[i]);
    out << (i ? "," : "") << buf;
  }
  if (label >= 0) out << ',' << label;
  out << '\n';
}

}  // namespace

std::vector<RelaySample> build_relay_dataset(int sample_count, RngStream& rng) {
  require(sample_count >= 1, "build_relay_dataset: sample count must be >= 1");
  std::vector<RelaySample> samples;
  samples.reserve(sample_count);
  for (int i = 0; i < sample_count; ++i) {
    cplx h = rng.next_complex_gaussian(1.0);
    cplx g = rng.next_complex_gaussian(1.0);
    double phi = wrap_phase(to_polar(h).phase + to_polar(g).phase);
    samples.push_back({{h.real(), h.imag(), g.real(), g.imag()}, {std::cos(phi), std::sin(phi)}});
  }
  return samples;
}

std::vector<DestinationSample> build_destination_dataset(int sample_count,
                                                         const DestinationScenario& scenario,
                                                         RngStream& rng) {
  require(sample_count >= 1, "build_destination_dataset: sample count must be >= 1");
  require(!scenario.branches.empty(), "build_destination_dataset: no branches");
  require(!scenario.snr_grid_db.empty(), "build_destination_dataset: empty SNR grid");
  require(scenario.relay_nets.empty() || scenario.relay_nets.size() == scenario.branches.size(),
          "build_destination_dataset: relay_nets must be empty or match branch count");
  int branch_count = static_cast<int>(scenario.branches.size());
  require(scenario.selected_branch >= 0 && scenario.selected_branch < branch_count,
          "build_destination_dataset: selected branch out of range");
  const Constellation& con = scenario.constellation;
  require(con.m >= 2, "build_destination_dataset: constellation not built");

  std::vector<DestinationSample> samples;
  samples.reserve(sample_count);

  std::vector<int> snr_idx(kChunk);
  std::vector<int> sym(kChunk);
  std::vector<std::vector<ChannelRealization>> chans(branch_count);
  std::vector<std::vector<cplx>> noise(branch_count);

  for (int done = 0; done < sample_count; done += kChunk) {
    int chunk = std::min(kChunk, sample_count - done);
    for (int b = 0; b < branch_count; ++b) {
      chans[b].clear();
      noise[b].clear();
    }
    // All randomness for the chunk is drawn up front, in a fixed per-sample
    // order, so batching the phase inference cannot change the stream.
    for (int i = 0; i < chunk; ++i) {
      snr_idx[i] = static_cast<int>(rng.next_below(scenario.snr_grid_db.size()));
      sym[i] = static_cast<int>(rng.next_below(con.m));
      for (int b = 0; b < branch_count; ++b)
        chans[b].push_back(sample_channel(scenario.branches[b].n_reflectors, rng, b));
      for (int b = 0; b < branch_count; ++b) noise[b].push_back(rng.next_complex_gaussian(1.0));
    }

    // Inference is deterministic, so branches the selector never reads can be
    // skipped without touching the stream.
    std::vector<std::vector<cplx>> factors(branch_count);
    if (!scenario.relay_nets.empty())
      for (int b = 0; b < branch_count; ++b)
        if (scenario.use_mrc || b == scenario.selected_branch)
          factors[b] = dnn_phase_factors(*scenario.relay_nets[b], chans[b]);

    for (int i = 0; i < chunk; ++i) {
      cplx x = con.points[sym[i]];
      double n0 = std::pow(10.0, -scenario.snr_grid_db[snr_idx[i]] / 10.0);
      double noise_scale = std::sqrt(n0);
      cplx y;
      if (scenario.use_mrc) {
        std::vector<BranchObservation> obs(branch_count);
        for (int b = 0; b < branch_count; ++b) {
          const ChannelRealization& ch = chans[b][i];
          cplx gain =
              scenario.relay_nets.empty()
                  ? effective_gain(ch, optimal_phases(ch), scenario.branches[b].geometry)
                  : effective_gain_from_factors(
                        ch,
                        std::span<const cplx>(factors[b]).subspan(i * ch.h.size(), ch.h.size()),
                        scenario.branches[b].geometry);
          obs[b] = {gain * x + noise_scale * noise[b][i], gain, b};
        }
        y = mrc_combine(obs);
      } else {
        int b = scenario.selected_branch;
        const ChannelRealization& ch = chans[b][i];
        cplx gain =
            scenario.relay_nets.empty()
                ? effective_gain(ch, optimal_phases(ch), scenario.branches[b].geometry)
                : effective_gain_from_factors(
                      ch, std::span<const cplx>(factors[b]).subspan(i * ch.h.size(), ch.h.size()),
                      scenario.branches[b].geometry);
        y = gain * x + noise_scale * noise[b][i];
      }
      samples.push_back({{y.real(), y.imag()}, sym[i] + 1});
    }
  }
  return samples;
}

template <typename Sample>
std::pair<std::vector<Sample>, std::vector<Sample>> split_validation(
    const std::vector<Sample>& dataset, double fraction, RngStream& rng) {
  require(fraction > 0.0 && fraction < 1.0, "split_validation: fraction must lie in (0, 1)");
  std::size_t n = dataset.size();
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.next_below(i)]);

  std::size_t val_count = static_cast<std::size_t>(std::lround(n * fraction));
  std::pair<std::vector<Sample>, std::vector<Sample>> out;
  out.first.reserve(n - val_count);
  out.second.reserve(val_count);
  for (std::size_t i = 0; i < n; ++i)
    (i < n - val_count ? out.first : out.second).push_back(dataset[idx[i]]);
  return out;
}

template std::pair<std::vector<RelaySample>, std::vector<RelaySample>> split_validation(
    const std::vector<RelaySample>&, double, RngStream&);
template std::pair<std::vector<DestinationSample>, std::vector<DestinationSample>>
split_validation(const std::vector<DestinationSample>&, double, RngStream&);

nn::Matrix relay_features(const std::vector<RelaySample>& samples) {
  nn::Matrix m(static_cast<int>(samples.size()), 4);
  for (std::size_t i = 0; i < samples.size(); ++i)
    std::copy(samples[i].features.begin(), samples[i].features.end(), m.row(static_cast<int>(i)));
  return m;
}

nn::Matrix relay_targets(const std::vector<RelaySample>& samples) {
  nn::Matrix m(static_cast<int>(samples.size()), 2);
  for (std::size_t i = 0; i < samples.size(); ++i)
    std::copy(samples[i].targets.begin(), samples[i].targets.end(), m.row(static_cast<int>(i)));
  return m;
}

nn::Matrix destination_features(const std::vector<DestinationSample>& samples) {
  nn::Matrix m(static_cast<int>(samples.size()), 2);
  for (std::size_t i = 0; i < samples.size(); ++i)
    std::copy(samples[i].features.begin(), samples[i].features.end(), m.row(static_cast<int>(i)));
  return m;
}

nn::Matrix destination_one_hot(const std::vector<DestinationSample>& samples, int m_order) {
  nn::Matrix m(static_cast<int>(samples.size()), m_order);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    require(samples[i].label >= 1 && samples[i].label <= m_order,
            "destination_one_hot: label out of range");
    m.at(static_cast<int>(i), samples[i].label - 1) = 1.0;
  }
  return m;
}

std::vector<int> destination_labels(const std::vector<DestinationSample>& samples) {
  std::vector<int> labels(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) labels[i] = samples[i].label;
  return labels;
}

void export_relay_csv(const std::string& path, const std::vector<RelaySample>& samples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_relay_csv: cannot open " + path);
  out << "re_h,im_h,re_g,im_g,re_target,im_target\n";
  for (const RelaySample& s : samples) {
    double row[6] = {s.features[0], s.features[1], s.features[2],
                     s.features[3], s.targets[0],  s.targets[1]};
    write_csv_line(out, row);
  }
  if (!out) throw std::runtime_error("export_relay_csv: write failed for " + path);
}

void export_destination_csv(const std::string& path,
                            const std::vector<DestinationSample>& samples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_destination_csv: cannot open " + path);
  out << "re_y,im_y,class\n";
  for (const DestinationSample& s : samples)
    write_csv_line(out, {s.features.data(), 2}, s.label);
  if (!out) throw std::runtime_error("export_destination_csv: write failed for " + path);
}

}  // namespace crisim
