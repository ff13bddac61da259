#include "crisim/geometry.hpp"

#include <cmath>

#include "crisim/types.hpp"

namespace crisim {

double path_gain(double d, double c) {
  require(d > 0.0, "path_gain: distance must be positive");
  require(c > 0.0, "path_gain: path loss exponent must be positive");
  return std::pow(1.0 / d, c);
}

RelayGeometry place_relay(double d_sr, double theta, double c) {
  require(d_sr > 0.0 && d_sr < 1.0, "place_relay: d_sr must lie in (0, 1)");
  require(theta >= kPi / 2.0 && theta <= kPi, "place_relay: theta must lie in [pi/2, pi]");
  require(c > 0.0, "place_relay: path loss exponent must be positive");

  // Positive root of d_rd^2 - 2 d_sr cos(theta) d_rd + (d_sr^2 - 1) = 0.
  // For theta >= pi/2 the cosine term is <= 0 and d_sr < 1 keeps the
  // discriminant positive, so exactly one positive root exists.
  double cos_t = std::cos(theta);
  double sin_t = std::sin(theta);
  double d_rd = d_sr * cos_t + std::sqrt(1.0 - d_sr * d_sr * sin_t * sin_t);

  RelayGeometry geo;
  geo.d_sr = d_sr;
  geo.d_rd = d_rd;
  geo.theta = theta;
  geo.c = c;
  geo.g_sr = path_gain(d_sr, c);
  geo.g_rd = path_gain(d_rd, c);
  return geo;
}

}  // namespace crisim
