#include "crisim/dnn_phases.hpp"

#include <cmath>

#include "crisim/types.hpp"

namespace crisim {

std::vector<cplx> dnn_phase_factors(const nn::DenseNetwork& net,
                                    std::span<const ChannelRealization> realizations) {
  require(net.input_dim() == 4 && net.output_dim() == 2,
          "dnn_phase_factors: relay network must map 4 features to 2 outputs");
  if (realizations.empty()) return {};
  std::size_t n = realizations.front().h.size();
  nn::Matrix features(static_cast<int>(realizations.size() * n), 4);
  int row = 0;
  for (const ChannelRealization& ch : realizations) {
    require(ch.h.size() == n, "dnn_phase_factors: reflector counts differ");
    for (std::size_t i = 0; i < n; ++i) {
      double* f = features.row(row++);
      f[0] = ch.h[i].real();
      f[1] = ch.h[i].imag();
      f[2] = ch.g[i].real();
      f[3] = ch.g[i].imag();
    }
  }
  nn::Matrix raw = nn::forward(net, features);
  std::vector<cplx> factors(features.rows);
  for (int i = 0; i < raw.rows; ++i) {
    double u = raw.at(i, 0);
    double v = raw.at(i, 1);
    double norm = std::hypot(u, v);
    factors[i] = norm > 0.0 ? cplx(u / norm, v / norm) : cplx(1.0, 0.0);
  }
  return factors;
}

PhaseVector dnn_phases(const nn::DenseNetwork& net, const ChannelRealization& realization) {
  std::vector<cplx> factors = dnn_phase_factors(net, {&realization, 1});
  PhaseVector pv;
  pv.phases.reserve(factors.size());
  for (cplx f : factors) pv.phases.push_back(wrap_phase(std::arg(f)));
  return pv;
}

cplx effective_gain_from_factors(const ChannelRealization& ch, std::span<const cplx> factors,
                                 const RelayGeometry& geo) {
  require(factors.size() == ch.h.size(), "effective_gain_from_factors: dimension mismatch");
  cplx sum = 0.0;
  for (std::size_t i = 0; i < ch.h.size(); ++i) sum += ch.h[i] * factors[i] * ch.g[i];
  return std::sqrt(geo.g_sr * geo.g_rd) * sum;
}

}  // namespace crisim
