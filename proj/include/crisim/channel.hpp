#pragma once

#include <vector>

#include "crisim/rng.hpp"
#include "crisim/types.hpp"

namespace crisim {

// One Rayleigh block-fading realization for a single relay: h[n] is the S->R_l
// coefficient of reflector n, g[n] the R_l->D coefficient. Both are i.i.d.
// CN(0, 1).
struct ChannelRealization {
  std::vector<cplx> h;
  std::vector<cplx> g;
  int relay_index = 0;
};

// Magnitude/phase split under the e^{-j phi} convention used throughout:
// coefficient = magnitude * exp(-j * phase), phase in (-pi, pi].
struct PolarForm {
  double magnitude = 0.0;
  double phase = 0.0;
};

PolarForm to_polar(cplx coefficient);

// Draws n_reflectors i.i.d. CN(0,1) pairs; all h first, then all g.
ChannelRealization sample_channel(int n_reflectors, RngStream& rng, int relay_index = 0);

// Complex AWGN sample with total variance n0 (n0/2 per real dimension).
cplx sample_awgn(double n0, RngStream& rng);

}  // namespace crisim
