#pragma once

#include <span>
#include <vector>

#include "crisim/channel.hpp"
#include "crisim/neural.hpp"
#include "crisim/rislink.hpp"

namespace crisim {

// Batched relay-DNN inference: one network evaluation per reflector with
// features [Re h, Im h, Re g, Im g], output renormalized to a unit-modulus
// reflection factor e^{j phi_hat}. Factors are returned flattened in
// realization-major order; every realization must have the same reflector
// count. A degenerate (0,0) output maps to factor 1.
std::vector<cplx> dnn_phase_factors(const nn::DenseNetwork& net,
                                    std::span<const ChannelRealization> realizations);

// Single-realization convenience wrapper returning wrapped angles.
PhaseVector dnn_phases(const nn::DenseNetwork& net, const ChannelRealization& realization);

// sqrt(g_sr * g_rd) * sum_n h_n f_n g_n for unit-modulus factors f.
cplx effective_gain_from_factors(const ChannelRealization& ch, std::span<const cplx> factors,
                                 const RelayGeometry& geo);

}  // namespace crisim
