#include "crisim/modem.hpp"

#include <cmath>

namespace crisim {
namespace {

unsigned gray_code(unsigned k) { return k ^ (k >> 1); }

// Per-axis level amplitudes {-(n-1), ..., -1, 1, ..., n-1} in steps of 2.
double level(int k, int n_levels) { return 2.0 * k - (n_levels - 1); }

}  // namespace

Constellation build_constellation(int m) {
  require(m == 4 || m == 8 || m == 16, "build_constellation: order must be 4, 8 or 16");

  // I/Q grid: square for 4/16, 4x2 rectangle for 8.
  int ni = (m == 16 || m == 8) ? 4 : 2;
  int nq = m / ni;
  int bi = (ni == 4) ? 2 : 1;
  int bq = (nq == 4) ? 2 : 1;

  double energy = 0.0;
  for (int ki = 0; ki < ni; ++ki)
    for (int kq = 0; kq < nq; ++kq)
      energy += level(ki, ni) * level(ki, ni) + level(kq, nq) * level(kq, nq);
  double scale = 1.0 / std::sqrt(energy / m);

  Constellation c;
  c.m = m;
  c.bits_per_symbol = bi + bq;
  c.points.resize(m);
  c.bit_patterns.resize(m);
  c.index_by_pattern.resize(m);
  for (int ki = 0; ki < ni; ++ki) {
    for (int kq = 0; kq < nq; ++kq) {
      int v = ki * nq + kq;
      c.points[v] = scale * cplx(level(ki, ni), level(kq, nq));
      unsigned bits = (gray_code(ki) << bq) | gray_code(kq);
      c.bit_patterns[v] = bits;
      c.index_by_pattern[bits] = v;
    }
  }
  return c;
}

cplx modulate(const Constellation& c, const std::vector<int>& bits) {
  require(static_cast<int>(bits.size()) == c.bits_per_symbol,
          "modulate: bit count must equal log2(M)");
  unsigned pattern = 0;
  for (int b : bits) {
    require(b == 0 || b == 1, "modulate: bits must be 0 or 1");
    pattern = (pattern << 1) | static_cast<unsigned>(b);
  }
  return c.points[c.index_by_pattern[pattern]];
}

std::vector<int> demap(const Constellation& c, int symbol_index) {
  require(symbol_index >= 0 && symbol_index < c.m, "demap: symbol index out of range");
  std::vector<int> bits(c.bits_per_symbol);
  unsigned pattern = c.bit_patterns[symbol_index];
  for (int i = c.bits_per_symbol - 1; i >= 0; --i) {
    bits[i] = static_cast<int>(pattern & 1u);
    pattern >>= 1;
  }
  return bits;
}

int class_of(const Constellation& c, int v) {
  require(v >= 1 && v <= c.m, "class_of: symbol index out of range");
  return v;
}

cplx symbol_of(const Constellation& c, int label) {
  require(label >= 1 && label <= c.m, "symbol_of: class label out of range");
  return c.points[label - 1];
}

}  // namespace crisim
