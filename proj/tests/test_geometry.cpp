#include "crisim/geometry.hpp"

#include <cmath>

#include "doctest.h"

#include "crisim/rng.hpp"
#include "crisim/types.hpp"

using namespace crisim;

namespace {

// Independent route to d_rd: bisect the law-of-cosines quadratic
// f(x) = d_sr^2 + x^2 - 2 d_sr x cos(theta) - 1 for its positive root.
double d_rd_bisection(double d_sr, double theta) {
  auto f = [&](double x) { return d_sr * d_sr + x * x - 2.0 * d_sr * x * std::cos(theta) - 1.0; };
  double lo = 0.0, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("path_gain matches (1/d)^c") {
  CHECK(path_gain(1.0, 4.0) == doctest::Approx(1.0));
  CHECK(path_gain(0.5, 4.0) == doctest::Approx(16.0));
  CHECK(path_gain(0.2, 4.0) == doctest::Approx(625.0));
  CHECK(path_gain(0.25, 3.0) == doctest::Approx(64.0));
  CHECK(path_gain(2.0, 2.0) == doctest::Approx(0.25));
}

TEST_CASE("path_gain rejects non-positive arguments") {
  CHECK_THROWS(path_gain(0.0, 4.0));
  CHECK_THROWS(path_gain(-0.5, 4.0));
  CHECK_THROWS(path_gain(0.5, 0.0));
  CHECK_THROWS(path_gain(0.5, -1.0));
}

TEST_CASE("place_relay reproduces the reference placements") {
  // (d_sr, d_rd) pairs as reported for the two-, four- and mixed-relay
  // layouts, all at theta = pi/2; the references are rounded to 2 decimals.
  const double cases[][2] = {{0.2, 0.98}, {0.5, 0.86}, {0.4, 0.91}, {0.55, 0.83},
                             {0.65, 0.76}, {0.9, 0.43}, {0.35, 0.93}};
  for (const auto& c : cases) {
    RelayGeometry g = place_relay(c[0], kPi / 2, 4.0);
    CHECK(g.d_rd == doctest::Approx(c[1]).epsilon(0.01));
    // theta = pi/2 collapses to the circle chord: d_rd = sqrt(1 - d_sr^2).
    CHECK(g.d_rd == doctest::Approx(std::sqrt(1.0 - c[0] * c[0])));
  }
}

TEST_CASE("place_relay agrees with a bisection solve of the quadratic") {
  RngStream rng = RngStream::derive(11, {stream::kTest, 1});
  for (int i = 0; i < 500; ++i) {
    double d_sr = 0.02 + 0.96 * rng.next_double();
    double theta = kPi / 2 + (kPi / 2) * rng.next_double();
    RelayGeometry g = place_relay(d_sr, theta, 3.0);
    CHECK(g.d_rd == doctest::Approx(d_rd_bisection(d_sr, theta)).epsilon(1e-9));
  }
}

TEST_CASE("placement satisfies the law of cosines with unit baseline") {
  RngStream rng = RngStream::derive(11, {stream::kTest, 2});
  for (int i = 0; i < 500; ++i) {
    double d_sr = 0.02 + 0.96 * rng.next_double();
    double theta = kPi / 2 + (kPi / 2) * rng.next_double();
    RelayGeometry g = place_relay(d_sr, theta, 4.0);
    double residual =
        g.d_sr * g.d_sr + g.d_rd * g.d_rd - 2.0 * g.d_sr * g.d_rd * std::cos(g.theta);
    CHECK(residual == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.d_rd > 0.0);
    CHECK(g.d_rd < 1.0);
  }
}

TEST_CASE("d_rd shrinks as the relay angle opens") {
  for (double d_sr : {0.1, 0.4, 0.7, 0.95}) {
    double prev = place_relay(d_sr, kPi / 2, 4.0).d_rd;
    for (double theta = kPi / 2 + 0.05; theta <= kPi; theta += 0.05) {
      double cur = place_relay(d_sr, theta, 4.0).d_rd;
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("degenerate angle theta = pi puts the relay on the baseline") {
  for (double d_sr : {0.1, 0.5, 0.9}) {
    RelayGeometry g = place_relay(d_sr, kPi, 4.0);
    CHECK(g.d_rd == doctest::Approx(1.0 - d_sr).epsilon(1e-12));
  }
}

TEST_CASE("place_relay fills in the path gains") {
  RelayGeometry g = place_relay(0.2, kPi / 2, 4.0);
  CHECK(g.g_sr == doctest::Approx(625.0));
  CHECK(g.g_rd == doctest::Approx(path_gain(std::sqrt(0.96), 4.0)));
  CHECK(g.c == doctest::Approx(4.0));

  RelayGeometry g3 = place_relay(0.5, kPi / 2, 3.0);
  CHECK(g3.g_sr == doctest::Approx(8.0));
  CHECK(g3.g_rd == doctest::Approx(std::pow(1.0 / g3.d_rd, 3.0)));
}

TEST_CASE("place_relay rejects out-of-range inputs") {
  CHECK_THROWS(place_relay(0.0, kPi / 2, 4.0));
  CHECK_THROWS(place_relay(1.0, kPi / 2, 4.0));
  CHECK_THROWS(place_relay(1.3, kPi / 2, 4.0));
  CHECK_THROWS(place_relay(0.5, kPi / 2 - 0.01, 4.0));
  CHECK_THROWS(place_relay(0.5, kPi + 0.01, 4.0));
  CHECK_THROWS(place_relay(0.5, kPi / 2, 0.0));
}
