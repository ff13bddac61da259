#pragma once

#include <vector>

#include "crisim/types.hpp"

namespace crisim {

// M-QAM constellation with Gray bit mapping and unit average symbol energy.
// Symbol indices are 0-based internally; class labels are 1-based (1..M) and
// map to points by label = index + 1.
struct Constellation {
  int m = 0;
  int bits_per_symbol = 0;
  std::vector<cplx> points;             // indexed by symbol index
  std::vector<unsigned> bit_patterns;   // symbol index -> packed bits, MSB first
  std::vector<int> index_by_pattern;    // packed bits -> symbol index
};

// Supported orders: 4 (square), 8 (two-amplitude rectangular), 16 (square).
Constellation build_constellation(int m);

// bits must hold exactly log2(M) values in {0,1}, MSB first.
cplx modulate(const Constellation& c, const std::vector<int>& bits);

// Inverse of modulate on indices: bit vector of the given symbol index.
std::vector<int> demap(const Constellation& c, int symbol_index);

// Class label of a symbol (both 1..M); the maps are inverse bijections.
int class_of(const Constellation& c, int v);
cplx symbol_of(const Constellation& c, int label);

}  // namespace crisim
