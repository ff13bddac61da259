#pragma once

#include <cstdint>
#include <initializer_list>

#include "crisim/types.hpp"

namespace crisim {

// Stream purpose tags. Every consumer of randomness derives its own stream from
// (seed, purpose, ...identifiers) so draws never depend on evaluation order
// elsewhere in the program.
namespace stream {
inline constexpr std::uint64_t kChannel = 0x01;
inline constexpr std::uint64_t kNoise = 0x02;
inline constexpr std::uint64_t kSymbols = 0x03;
inline constexpr std::uint64_t kRelayData = 0x04;
inline constexpr std::uint64_t kDestinationData = 0x05;
inline constexpr std::uint64_t kInit = 0x06;
inline constexpr std::uint64_t kShuffle = 0x07;
inline constexpr std::uint64_t kSplit = 0x08;
inline constexpr std::uint64_t kTest = 0x09;
inline constexpr std::uint64_t kTrain = 0x0a;
inline constexpr std::uint64_t kProbe = 0x0b;
}  // namespace stream

// Counter-based deterministic generator (splitmix64 core). Cheap to construct,
// value-semantic, and platform independent: all arithmetic is uint64.
class RngStream {
 public:
  RngStream() = default;
  explicit RngStream(std::uint64_t state) : state_(state) {}

  // Derives an independent stream from a root seed and a path of identifiers
  // (purpose tag, relay index, block index, ...). Identical inputs always give
  // the identical stream.
  static RngStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = fmix64(seed + 0x9e3779b97f4a7c15ULL);
    for (std::uint64_t p : path) {
      h ^= fmix64(p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
      h = fmix64(h);
    }
    return RngStream(h);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return fmix64(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe as a log() argument.
  double next_open_double() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  // Circularly-symmetric complex Gaussian with total variance `variance`
  // (variance/2 per real dimension), sampled in polar form. variance == 0
  // yields exactly 0.
  cplx next_complex_gaussian(double variance) {
    double u1 = next_open_double();
    double u2 = next_double();
    double r = std::sqrt(-variance * std::log(u1));
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
  }

 private:
  static std::uint64_t fmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_ = 0;
};

}  // namespace crisim
