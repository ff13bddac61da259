#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace crisim {

enum class ComplexityScheme { kRs, kMrc, kMl, kDnn };

struct DnnProfile {
  int inputs = 0;              // p
  std::vector<int> hidden;     // n_1 .. n_K
  int outputs = 0;             // o
};

struct ComplexityQuery {
  ComplexityScheme scheme = ComplexityScheme::kRs;
  int l = 0;  // relay count
  int m = 0;  // modulation order
  int n = 0;  // reflectors per relay
  std::optional<DnnProfile> dnn;
};

// Real-multiplication counts:
//   RS:  N + 4M
//   MRC: L(N + 1) + 4M
//   ML:  LN + 4 L^2 M
//   DNN: p n_1 + o n_K + sum_k n_k n_{k+1}
long long op_count(const ComplexityQuery& query);

struct ComplexityRow {
  std::string scheme;
  std::string scenario;
  std::string parameters;
  long long count = 0;
};

struct ComplexityScenario {
  std::string name;
  int l = 0, m = 0, n = 0;
};

struct NamedDnnProfile {
  std::string name;
  DnnProfile profile;
};

// Scenario/profile sets behind the standard 12-row table: three (L, M, N)
// scenarios crossed with RS/MRC/ML, plus three DNN profiles at p=2, o=4.
std::vector<ComplexityScenario> standard_scenarios();
std::vector<NamedDnnProfile> standard_profiles();

std::vector<ComplexityRow> complexity_table(const std::vector<ComplexityScenario>& scenarios,
                                            const std::vector<NamedDnnProfile>& profiles);

void write_complexity_csv(const std::string& path, const std::vector<ComplexityRow>& rows);

// JSON config with "scenarios": [{name, l, m, n}] and "profiles":
// [{name, inputs, hidden, outputs}]; either key may be omitted.
std::pair<std::vector<ComplexityScenario>, std::vector<NamedDnnProfile>> load_complexity_config(
    const std::string& path);

}  // namespace crisim
