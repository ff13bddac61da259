#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace crisim {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Wraps an angle to the half-open interval (-pi, pi].
inline double wrap_phase(double angle) {
  double a = std::fmod(angle, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

inline void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace crisim
