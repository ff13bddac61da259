#include "crisim/modem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"

#include "crisim/types.hpp"

using namespace crisim;

namespace {

int hamming(unsigned a, unsigned b) { return std::popcount(a ^ b); }

double min_point_distance(const Constellation& c) {
  double best = 1e300;
  for (int i = 0; i < c.m; ++i)
    for (int j = i + 1; j < c.m; ++j) best = std::min(best, std::abs(c.points[i] - c.points[j]));
  return best;
}

}  // namespace

TEST_CASE("4-QAM is the unit-energy quadrature set") {
  Constellation c = build_constellation(4);
  CHECK(c.bits_per_symbol == 2);
  std::set<std::pair<double, double>> got, want;
  double s = 1.0 / std::sqrt(2.0);
  for (const cplx& p : c.points) got.insert({p.real(), p.imag()});
  for (double i : {-s, s})
    for (double q : {-s, s}) want.insert({i, q});
  CHECK(got.size() == 4);
  for (const auto& [re, im] : got) {
    bool matched = false;
    for (const auto& [wr, wi] : want)
      matched |= std::abs(re - wr) < 1e-12 && std::abs(im - wi) < 1e-12;
    CHECK(matched);
  }
}

TEST_CASE("average symbol energy is exactly one for every order") {
  for (int m : {4, 8, 16}) {
    Constellation c = build_constellation(m);
    CHECK(static_cast<int>(c.points.size()) == m);
    double energy = 0.0;
    for (const cplx& p : c.points) energy += std::norm(p);
    CHECK(energy / m == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("unsupported orders are rejected") {
  CHECK_THROWS(build_constellation(2));
  CHECK_THROWS(build_constellation(32));
  CHECK_THROWS(build_constellation(0));
  CHECK_THROWS(build_constellation(-4));
}

TEST_CASE("bit mapping is a bijection") {
  for (int m : {4, 8, 16}) {
    Constellation c = build_constellation(m);
    std::set<unsigned> patterns(c.bit_patterns.begin(), c.bit_patterns.end());
    CHECK(static_cast<int>(patterns.size()) == m);
    for (unsigned p : patterns) CHECK(p < static_cast<unsigned>(m));
    for (int v = 0; v < m; ++v) CHECK(c.index_by_pattern[c.bit_patterns[v]] == v);
  }
}

TEST_CASE("modulate and demap invert each other") {
  for (int m : {4, 8, 16}) {
    Constellation c = build_constellation(m);
    std::set<std::pair<double, double>> outputs;
    for (int v = 0; v < m; ++v) {
      std::vector<int> bits = demap(c, v);
      CHECK(static_cast<int>(bits.size()) == c.bits_per_symbol);
      cplx x = modulate(c, bits);
      CHECK(std::abs(x - c.points[v]) < 1e-15);
      outputs.insert({x.real(), x.imag()});
    }
    CHECK(static_cast<int>(outputs.size()) == m);
  }
}

TEST_CASE("modulate validates its bit string") {
  Constellation c = build_constellation(4);
  CHECK_THROWS(modulate(c, {0}));
  CHECK_THROWS(modulate(c, {0, 1, 0}));
  CHECK_THROWS(modulate(c, {0, 2}));
  CHECK_THROWS(modulate(c, {-1, 0}));
}

TEST_CASE("nearest neighbours differ in exactly one bit") {
  // Gray coding: every minimum-distance pair flips a single bit. For the
  // rectangular M=8 grid this covers all in-row and in-column neighbours.
  for (int m : {4, 8, 16}) {
    Constellation c = build_constellation(m);
    double dmin = min_point_distance(c);
    int pairs = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (std::abs(c.points[i] - c.points[j]) < dmin * 1.0001) {
          CHECK(hamming(c.bit_patterns[i], c.bit_patterns[j]) == 1);
          ++pairs;
        }
    CHECK(pairs >= m);  // a grid has at least M minimum-distance edges
  }
}

TEST_CASE("class labels and symbols are inverse bijections") {
  for (int m : {4, 8, 16}) {
    Constellation c = build_constellation(m);
    std::set<int> classes;
    for (int v = 1; v <= m; ++v) {
      int label = class_of(c, v);
      CHECK(label >= 1);
      CHECK(label <= m);
      classes.insert(label);
      CHECK(std::abs(symbol_of(c, label) - c.points[v - 1]) < 1e-15);
    }
    CHECK(static_cast<int>(classes.size()) == m);
    CHECK_THROWS(class_of(c, 0));
    CHECK_THROWS(class_of(c, m + 1));
    CHECK_THROWS(symbol_of(c, 0));
    CHECK_THROWS(symbol_of(c, m + 1));
  }
}

TEST_CASE("8-QAM uses a two-amplitude rectangular layout") {
  Constellation c = build_constellation(8);
  std::set<long long> amplitudes;
  for (const cplx& p : c.points)
    amplitudes.insert(std::llround(std::norm(p) * 1e9));
  CHECK(amplitudes.size() == 2);
}
