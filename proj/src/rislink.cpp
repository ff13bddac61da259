#include "crisim/rislink.hpp"

#include <cmath>

namespace crisim {

PhaseVector optimal_phases(const ChannelRealization& ch) {
  PhaseVector pv;
  pv.phases.reserve(ch.h.size());
  for (std::size_t n = 0; n < ch.h.size(); ++n) {
    double varphi = to_polar(ch.h[n]).phase;
    double vartheta = to_polar(ch.g[n]).phase;
    pv.phases.push_back(wrap_phase(varphi + vartheta));
  }
  return pv;
}

cplx effective_gain(const ChannelRealization& ch, const PhaseVector& phases,
                    const RelayGeometry& geo) {
  require(ch.h.size() == ch.g.size() && ch.h.size() == phases.phases.size(),
          "effective_gain: dimension mismatch");
  cplx sum = 0.0;
  for (std::size_t n = 0; n < ch.h.size(); ++n)
    sum += ch.h[n] * std::polar(1.0, phases.phases[n]) * ch.g[n];
  return std::sqrt(geo.g_sr * geo.g_rd) * sum;
}

BranchObservation receive(cplx x, const ChannelRealization& ch, const PhaseVector& phases,
                          const RelayGeometry& geo, double n0, RngStream& rng) {
  BranchObservation obs;
  obs.relay_index = ch.relay_index;
  obs.effective_gain = effective_gain(ch, phases, geo);
  obs.y = obs.effective_gain * x + sample_awgn(n0, rng);
  return obs;
}

double branch_snr(const ChannelRealization& ch, const PhaseVector& phases,
                  const RelayGeometry& geo, double es, double n0) {
  require(es > 0.0, "branch_snr: es must be positive");
  require(n0 > 0.0, "branch_snr: n0 must be positive");
  require(ch.h.size() == ch.g.size() && ch.h.size() == phases.phases.size(),
          "branch_snr: dimension mismatch");
  cplx sum = 0.0;
  for (std::size_t n = 0; n < ch.h.size(); ++n) {
    PolarForm h = to_polar(ch.h[n]);
    PolarForm g = to_polar(ch.g[n]);
    sum += h.magnitude * g.magnitude *
           std::polar(1.0, phases.phases[n] - h.phase - g.phase);
  }
  return std::norm(sum) * geo.g_sr * geo.g_rd * es / n0;
}

double total_snr(const std::vector<double>& branch_snrs) {
  double sum = 0.0;
  for (double g : branch_snrs) {
    require(g >= 0.0, "total_snr: branch SNR must be non-negative");
    sum += g;
  }
  return sum;
}

double throughput(double gamma_total) {
  require(gamma_total >= 0.0, "throughput: total SNR must be non-negative");
  return std::log2(1.0 + gamma_total);
}

}  // namespace crisim
