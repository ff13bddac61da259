#include "crisim/complexity.hpp"

#include <fstream>

#include "json.hpp"

#include "crisim/types.hpp"

namespace crisim {

long long op_count(const ComplexityQuery& q) {
  auto ll = [](int v) { return static_cast<long long>(v); };
  switch (q.scheme) {
    case ComplexityScheme::kRs:
      require(q.n > 0 && q.m > 0, "op_count: RS needs positive N and M");
      return ll(q.n) + 4 * ll(q.m);
    case ComplexityScheme::kMrc:
      require(q.l > 0 && q.n > 0 && q.m > 0, "op_count: MRC needs positive L, N and M");
      return ll(q.l) * (ll(q.n) + 1) + 4 * ll(q.m);
    case ComplexityScheme::kMl:
      require(q.l > 0 && q.n > 0 && q.m > 0, "op_count: ML needs positive L, N and M");
      return ll(q.l) * ll(q.n) + 4 * ll(q.l) * ll(q.l) * ll(q.m);
    case ComplexityScheme::kDnn: {
      require(q.dnn.has_value(), "op_count: DNN scheme needs a dnn_profile");
      const DnnProfile& p = *q.dnn;
      require(p.inputs > 0 && p.outputs > 0 && !p.hidden.empty(),
              "op_count: DNN profile needs positive dimensions");
      long long count = ll(p.inputs) * ll(p.hidden.front()) + ll(p.outputs) * ll(p.hidden.back());
      for (std::size_t k = 0; k + 1 < p.hidden.size(); ++k)
        count += ll(p.hidden[k]) * ll(p.hidden[k + 1]);
      return count;
    }
  }
  throw std::logic_error("op_count: unreachable");
}

std::vector<ComplexityScenario> standard_scenarios() {
  return {{"S1", 4, 4, 16}, {"S2", 6, 8, 32}, {"S3", 24, 16, 128}};
}

std::vector<NamedDnnProfile> standard_profiles() {
  return {{"DNN-1", {2, {256, 256, 256, 256}, 4}},
          {"DNN-2", {2, {16, 16}, 4}},
          {"DNN-3", {2, {8, 8}, 4}}};
}

std::vector<ComplexityRow> complexity_table(const std::vector<ComplexityScenario>& scenarios,
                                            const std::vector<NamedDnnProfile>& profiles) {
  std::vector<ComplexityRow> rows;
  auto params = [](const ComplexityScenario& s) {
    return "L=" + std::to_string(s.l) + " M=" + std::to_string(s.m) + " N=" + std::to_string(s.n);
  };
  for (const ComplexityScenario& s : scenarios) {
    rows.push_back({"RS", s.name, params(s),
                    op_count({ComplexityScheme::kRs, s.l, s.m, s.n, {}})});
    rows.push_back({"MRC", s.name, params(s),
                    op_count({ComplexityScheme::kMrc, s.l, s.m, s.n, {}})});
    rows.push_back({"ML", s.name, params(s),
                    op_count({ComplexityScheme::kMl, s.l, s.m, s.n, {}})});
  }
  for (const NamedDnnProfile& p : profiles) {
    std::string desc = "p=" + std::to_string(p.profile.inputs) + " hidden=";
    for (std::size_t k = 0; k < p.profile.hidden.size(); ++k)
      desc += (k ? "x" : "") + std::to_string(p.profile.hidden[k]);
    desc += " o=" + std::to_string(p.profile.outputs);
    rows.push_back({p.name, "-", desc, op_count({ComplexityScheme::kDnn, 0, 0, 0, p.profile})});
  }
  return rows;
}

std::pair<std::vector<ComplexityScenario>, std::vector<NamedDnnProfile>> load_complexity_config(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config file not found: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
  std::vector<ComplexityScenario> scenarios;
  for (const auto& s : doc.value("scenarios", nlohmann::json::array()))
    scenarios.push_back({s.at("name").get<std::string>(), s.at("l").get<int>(),
                         s.at("m").get<int>(), s.at("n").get<int>()});
  std::vector<NamedDnnProfile> profiles;
  for (const auto& p : doc.value("profiles", nlohmann::json::array()))
    profiles.push_back({p.at("name").get<std::string>(),
                        {p.at("inputs").get<int>(), p.at("hidden").get<std::vector<int>>(),
                         p.at("outputs").get<int>()}});
  return {std::move(scenarios), std::move(profiles)};
}

void write_complexity_csv(const std::string& path, const std::vector<ComplexityRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_complexity_csv: cannot open " + path);
  out << "scheme,scenario,parameters,count\n";
  for (const ComplexityRow& r : rows)
    out << r.scheme << ',' << r.scenario << ',' << r.parameters << ',' << r.count << '\n';
  if (!out) throw std::runtime_error("write_complexity_csv: write failed for " + path);
}

}  // namespace crisim
