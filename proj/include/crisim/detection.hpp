#pragma once

#include <span>
#include <vector>

#include "crisim/modem.hpp"
#include "crisim/rislink.hpp"
#include "crisim/types.hpp"

namespace crisim {

enum class CombiningScheme { kRs, kMrc, kMlVector };

struct DetectionResult {
  int symbol_index = 1;  // 1..M
  std::vector<int> bits;
  CombiningScheme scheme = CombiningScheme::kRs;
};

// 0-based argmin over candidate symbols of ||y - gains * x_v||^2; ties break to
// the lowest index. Hot-path core used by the detectors below.
int ml_detect_index(std::span<const cplx> y, std::span<const cplx> effective_gains,
                    const Constellation& c);

// Vector ML detection across L branches (single branch when L = 1).
DetectionResult ml_detect(std::span<const cplx> y, std::span<const cplx> effective_gains,
                          const Constellation& c);

// y_MRC = sum_l zeta_l y_l with zeta_l the conjugate of the branch's full
// effective gain (path-gain factor included), which makes the post-combining
// SNR equal sum_l gamma_l exactly.
cplx mrc_combine(std::span<const BranchObservation> observations);

DetectionResult mrc_detect(cplx y_mrc, std::span<const BranchObservation> observations,
                           const Constellation& c);

// Eq.-6-style best relay: argmin of the per-relay BER estimates (each within
// [0, 0.5]); ties break to the lowest index. Returns a 0-based index into the
// span, i.e. relay l* - 1.
int select_best_relay(std::span<const double> per_relay_ber);

}  // namespace crisim
