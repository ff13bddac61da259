#pragma once

#include <vector>

#include "crisim/channel.hpp"
#include "crisim/geometry.hpp"
#include "crisim/rng.hpp"
#include "crisim/types.hpp"

namespace crisim {

// Per-reflector RIS phases, wrapped to (-pi, pi]. Applying them as
// diag(e^{j phi_1}, ..., e^{j phi_N}) preserves coefficient magnitudes.
struct PhaseVector {
  std::vector<double> phases;
};

// One relay branch as seen by the destination: y = effective_gain * x + w.
struct BranchObservation {
  cplx y;
  cplx effective_gain;  // sqrt(g_sr * g_rd) * sum_n h_n e^{j phi_n} g_n
  int relay_index = 0;
};

// Closed-form SNR-maximizing phases: phi_n = phase(h_n) + phase(g_n) under the
// e^{-j phi} convention, so each term h_n e^{j phi_n} g_n becomes alpha_n beta_n.
PhaseVector optimal_phases(const ChannelRealization& ch);

// sqrt(g_sr * g_rd) * sum_n h_n e^{j phi_n} g_n.
cplx effective_gain(const ChannelRealization& ch, const PhaseVector& phases,
                    const RelayGeometry& geo);

BranchObservation receive(cplx x, const ChannelRealization& ch, const PhaseVector& phases,
                          const RelayGeometry& geo, double n0, RngStream& rng);

// Instantaneous branch SNR gamma = |sum alpha beta e^{j(phi - varphi - vartheta)}|^2
// * g_sr * g_rd * es / n0.
double branch_snr(const ChannelRealization& ch, const PhaseVector& phases,
                  const RelayGeometry& geo, double es, double n0);

// gamma_T = sum of branch SNRs; throughput R = log2(1 + gamma_T).
double total_snr(const std::vector<double>& branch_snrs);
double throughput(double gamma_total);

}  // namespace crisim
