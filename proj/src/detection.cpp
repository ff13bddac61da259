#include "crisim/detection.hpp"

namespace crisim {

int ml_detect_index(std::span<const cplx> y, std::span<const cplx> effective_gains,
                    const Constellation& c) {
  require(!y.empty(), "ml_detect: empty observation vector");
  require(y.size() == effective_gains.size(), "ml_detect: dimension mismatch");
  int best = 0;
  double best_metric = 0.0;
  for (int v = 0; v < c.m; ++v) {
    double metric = 0.0;
    for (std::size_t l = 0; l < y.size(); ++l)
      metric += std::norm(y[l] - effective_gains[l] * c.points[v]);
    if (v == 0 || metric < best_metric) {
      best = v;
      best_metric = metric;
    }
  }
  return best;
}

DetectionResult ml_detect(std::span<const cplx> y, std::span<const cplx> effective_gains,
                          const Constellation& c) {
  int v = ml_detect_index(y, effective_gains, c);
  DetectionResult r;
  r.symbol_index = v + 1;
  r.bits = demap(c, v);
  r.scheme = y.size() > 1 ? CombiningScheme::kMlVector : CombiningScheme::kRs;
  return r;
}

cplx mrc_combine(std::span<const BranchObservation> observations) {
  require(!observations.empty(), "mrc_combine: empty input");
  cplx y_mrc = 0.0;
  for (const BranchObservation& obs : observations)
    y_mrc += std::conj(obs.effective_gain) * obs.y;
  return y_mrc;
}

DetectionResult mrc_detect(cplx y_mrc, std::span<const BranchObservation> observations,
                           const Constellation& c) {
  require(!observations.empty(), "mrc_detect: empty input");
  // Combined coefficient sum_l zeta_l * g_eff,l = sum_l |g_eff,l|^2, real >= 0.
  double coeff = 0.0;
  for (const BranchObservation& obs : observations) coeff += std::norm(obs.effective_gain);
  cplx gain(coeff, 0.0);
  int v = ml_detect_index(std::span<const cplx>(&y_mrc, 1), std::span<const cplx>(&gain, 1), c);
  DetectionResult r;
  r.symbol_index = v + 1;
  r.bits = demap(c, v);
  r.scheme = CombiningScheme::kMrc;
  return r;
}

int select_best_relay(std::span<const double> per_relay_ber) {
  require(!per_relay_ber.empty(), "select_best_relay: empty input");
  int best = 0;
  for (std::size_t l = 0; l < per_relay_ber.size(); ++l) {
    require(per_relay_ber[l] >= 0.0 && per_relay_ber[l] <= 0.5,
            "select_best_relay: BER estimate outside [0, 0.5]");
    if (per_relay_ber[l] < per_relay_ber[best]) best = static_cast<int>(l);
  }
  return best;
}

}  // namespace crisim
