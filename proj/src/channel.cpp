#include "crisim/channel.hpp"

#include <cmath>

namespace crisim {

PolarForm to_polar(cplx coefficient) {
  PolarForm p;
  p.magnitude = std::abs(coefficient);
  p.phase = wrap_phase(-std::arg(coefficient));
  return p;
}

ChannelRealization sample_channel(int n_reflectors, RngStream& rng, int relay_index) {
  require(n_reflectors >= 1, "sample_channel: need at least one reflector");
  ChannelRealization ch;
  ch.relay_index = relay_index;
  ch.h.reserve(n_reflectors);
  ch.g.reserve(n_reflectors);
  for (int n = 0; n < n_reflectors; ++n) ch.h.push_back(rng.next_complex_gaussian(1.0));
  for (int n = 0; n < n_reflectors; ++n) ch.g.push_back(rng.next_complex_gaussian(1.0));
  return ch;
}

cplx sample_awgn(double n0, RngStream& rng) {
  require(n0 >= 0.0, "sample_awgn: noise power must be non-negative");
  return rng.next_complex_gaussian(n0);
}

}  // namespace crisim
