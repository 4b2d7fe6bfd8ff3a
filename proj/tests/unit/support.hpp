#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bfhire/io.hpp"

namespace bfhire::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(BFHIRE_FIXTURE_DIR) + "/" + name;
}

inline Instance fixture_e1() { return load_instance(fixture_path("fixture_e1.json")); }

struct Spec {
  std::vector<std::pair<unsigned, unsigned>> edges;
  std::vector<std::string> adapter;
  std::vector<std::string> consult;  // defaults to adapter when empty
  std::vector<std::string> quality;  // defaults to "1"
  std::string hospital_budget = "10";
  std::string patient_budget = "10";
};

inline nlohmann::json instance_json(const Spec& s) {
  nlohmann::json j;
  j["weights"] = {"0.25", "0.25", "0.25", "0.25"};
  j["hospital_budget"] = s.hospital_budget;
  j["patient_budget"] = s.patient_budget;
  j["nodes"] = nlohmann::json::array();
  for (std::size_t i = 0; i < s.adapter.size(); ++i) {
    const unsigned id = static_cast<unsigned>(i + 1);
    nlohmann::json nb = nlohmann::json::array();
    for (auto [a, b] : s.edges) {
      if (a == id) nb.push_back(b);
      if (b == id) nb.push_back(a);
    }
    j["nodes"].push_back({{"id", id},
                          {"neighbors", nb},
                          {"adapter_cost", s.adapter[i]},
                          {"consult_cost", s.consult.empty() ? s.adapter[i] : s.consult[i]},
                          {"quality", s.quality.empty() ? "1" : s.quality[i]}});
  }
  return j;
}

inline Instance make_instance(const Spec& s) { return validate_instance(instance_json(s)); }

inline std::vector<unsigned> ids_of(const std::vector<EcId>& ids) {
  std::vector<unsigned> out;
  for (EcId id : ids) out.push_back(id.value);
  return out;
}

inline std::vector<unsigned> ids_of(const IdSet& ids) { return ids_of(to_vector(ids)); }

inline Rational q(const std::string& text) { return parse_rational(text); }
inline Money money(const std::string& text) { return Money::parse(text); }

}  // namespace bfhire::test
