#pragma once

#include <array>
#include <string>
#include <vector>

#include "crisim/geometry.hpp"
#include "crisim/modem.hpp"
#include "crisim/neural.hpp"
#include "crisim/rng.hpp"

namespace crisim {

// One per-reflector training sample for the relay phase network: raw CSI in,
// unit-modulus reflection factor out.
struct RelaySample {
  std::array<double, 4> features;  // [Re h, Im h, Re g, Im g]
  std::array<double, 2> targets;   // [cos phi, sin phi] of the optimal phase
};

std::vector<RelaySample> build_relay_dataset(int sample_count, RngStream& rng);

struct DestinationBranch {
  RelayGeometry geometry;
  int n_reflectors = 0;
};

// Fixes everything the destination classifier's data generator needs: the
// constellation, the relay layout, the SNR points samples are drawn across,
// whether the observation is a selected single branch or the MRC combination,
// and which phase policy the relays run (closed-form when relay_nets is empty).
struct DestinationScenario {
  Constellation constellation;
  std::vector<DestinationBranch> branches;
  std::vector<double> snr_grid_db;
  bool use_mrc = false;
  int selected_branch = 0;
  std::vector<const nn::DenseNetwork*> relay_nets;
};

struct DestinationSample {
  std::array<double, 2> features;  // [Re y, Im y]
  int label = 1;                   // class in 1..M
};

std::vector<DestinationSample> build_destination_dataset(int sample_count,
                                                         const DestinationScenario& scenario,
                                                         RngStream& rng);

// Disjoint, exhaustive shuffled split; the second element holds the validation
// fraction.
template <typename Sample>
std::pair<std::vector<Sample>, std::vector<Sample>> split_validation(
    const std::vector<Sample>& dataset, double fraction, RngStream& rng);

// Matrix bridges for the neural module.
nn::Matrix relay_features(const std::vector<RelaySample>& samples);
nn::Matrix relay_targets(const std::vector<RelaySample>& samples);
nn::Matrix destination_features(const std::vector<DestinationSample>& samples);
nn::Matrix destination_one_hot(const std::vector<DestinationSample>& samples, int m);
std::vector<int> destination_labels(const std::vector<DestinationSample>& samples);

// Delimited-text export: header row, one sample per line, features then targets.
void export_relay_csv(const std::string& path, const std::vector<RelaySample>& samples);
void export_destination_csv(const std::string& path,
                            const std::vector<DestinationSample>& samples);

}  // namespace crisim
