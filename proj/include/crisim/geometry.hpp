#pragma once

namespace crisim {

// Relay placement on the unit S-D baseline. theta is the angle at the relay
// between the S-R and R-D segments, so the law of cosines ties the three
// distances together:  d_sr^2 + d_rd^2 - 2 d_sr d_rd cos(theta) = 1.
struct RelayGeometry {
  double d_sr = 0.0;  // source-relay distance, normalised to d_SD = 1
  double d_rd = 0.0;  // relay-destination distance
  double theta = 0.0; // angle at the relay, radians, in [pi/2, pi]
  double c = 0.0;     // path loss exponent
  double g_sr = 0.0;  // S-R path gain (1/d_sr)^c
  double g_rd = 0.0;  // R-D path gain (1/d_rd)^c
};

// Path gain of a link of length d with exponent c: (1/d)^c.
double path_gain(double d, double c);

// Solves the law of cosines for d_rd given d_sr and theta, and fills in both
// path gains. Requires 0 < d_sr < 1, theta in [pi/2, pi], c > 0.
RelayGeometry place_relay(double d_sr, double theta, double c);

}  // namespace crisim
