#include "bfhire/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bfhire {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

class Collector {
 public:
  void add(std::string field, std::optional<unsigned> id, std::string message) {
    violations_.push_back({std::move(field), id, std::move(message)});
  }
  bool empty() const { return violations_.empty(); }
  [[noreturn]] void raise() { throw ValidationError(std::move(violations_)); }
  void raise_if_any() {
    if (!empty()) raise();
  }

 private:
  std::vector<Violation> violations_;
};

std::optional<Rational> read_number(const json& j, const std::string& field,
                                    std::optional<unsigned> id, Collector& errors) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    errors.add(field, id, "expected a decimal string");
  } catch (const std::invalid_argument& e) {
    errors.add(field, id, e.what());
  }
  return std::nullopt;
}

std::optional<Money> read_budget(const json& raw, const char* field, Collector& errors) {
  if (!raw.contains(field)) {
    errors.add(field, std::nullopt, "missing");
    return std::nullopt;
  }
  auto value = read_number(raw.at(field), field, std::nullopt, errors);
  if (!value) return std::nullopt;
  if (sgn(*value) < 0) {
    errors.add(field, std::nullopt, "negative budget");
    return std::nullopt;
  }
  return Money(*value);
}

std::optional<unsigned> read_id(const json& j) {
  if (!j.is_number_integer()) return std::nullopt;
  const auto v = j.get<long long>();
  if (v < 1 || v > static_cast<long long>(UINT32_MAX)) return std::nullopt;
  return static_cast<unsigned>(v);
}

struct RawNode {
  unsigned id;
  std::vector<unsigned> neighbors;
  std::optional<Rational> adapter_cost;
  std::optional<Rational> consult_cost;
  std::optional<QualityParams> params;
  std::optional<Rational> scalar_quality;
};

}  // namespace

Instance validate_instance(const json& raw) {
  Collector errors;
  if (!raw.is_object()) {
    errors.add("instance", std::nullopt, "top level must be a JSON object");
    errors.raise();
  }

  QualityWeights weights;
  if (!raw.contains("weights") || !raw.at("weights").is_array() || raw.at("weights").size() != 4) {
    errors.add("weights", std::nullopt, "expected an array of 4 decimal strings");
  } else {
    bool parsed = true;
    for (std::size_t i = 0; i < 4; ++i) {
      auto w = read_number(raw.at("weights")[i], "weights[" + std::to_string(i) + "]",
                           std::nullopt, errors);
      if (w) weights.w[i] = *w;
      else parsed = false;
    }
    if (parsed) {
      for (auto& p : weights.validate()) errors.add(p.field, p.id, p.message);
    }
  }

  auto hospital_budget = read_budget(raw, "hospital_budget", errors);
  auto patient_budget = read_budget(raw, "patient_budget", errors);

  std::vector<RawNode> nodes;
  if (!raw.contains("nodes") || !raw.at("nodes").is_array()) {
    errors.add("nodes", std::nullopt, "expected an array of node objects");
    errors.raise();
  }
  for (const auto& jn : raw.at("nodes")) {
    if (!jn.is_object() || !jn.contains("id")) {
      errors.add("nodes", std::nullopt, "node without an id");
      continue;
    }
    auto id = read_id(jn.at("id"));
    if (!id) {
      errors.add("id", std::nullopt, "ids must be positive integers");
      continue;
    }
    RawNode node{*id, {}, {}, {}, {}, {}};
    if (jn.contains("neighbors")) {
      if (!jn.at("neighbors").is_array()) {
        errors.add("neighbors", *id, "expected an array of ids");
      } else {
        for (const auto& jnb : jn.at("neighbors")) {
          if (auto nb = read_id(jnb)) node.neighbors.push_back(*nb);
          else errors.add("neighbors", *id, "neighbor ids must be positive integers");
        }
      }
    }
    for (auto [field, slot] : {std::pair{"adapter_cost", &node.adapter_cost},
                               std::pair{"consult_cost", &node.consult_cost}}) {
      if (!jn.contains(field)) {
        errors.add(field, *id, "missing");
        continue;
      }
      *slot = read_number(jn.at(field), field, *id, errors);
      if (*slot && sgn(**slot) <= 0) {
        errors.add(field, *id, "non-positive cost");
        slot->reset();
      }
    }
    if (!jn.contains("quality")) {
      errors.add("quality", *id, "missing");
    } else if (const auto& jq = jn.at("quality"); jq.is_object()) {
      QualityParams p;
      bool ok = true;
      for (auto [key, slot] : {std::pair{"q", &p.qualification}, std::pair{"sr", &p.success_rate},
                               std::pair{"e", &p.experience}, std::pair{"h", &p.hospital}}) {
        std::string field = std::string("quality.") + key;
        if (!jq.contains(key)) {
          errors.add(field, *id, "missing");
          ok = false;
          continue;
        }
        auto v = read_number(jq.at(key), field, *id, errors);
        if (!v) ok = false;
        else if (sgn(*v) < 0) {
          errors.add(field, *id, "negative quality parameter");
          ok = false;
        } else {
          *slot = *v;
        }
      }
      if (ok) node.params = p;
    } else {
      auto q = read_number(jq, "quality", *id, errors);
      if (q && sgn(*q) < 0) errors.add("quality", *id, "negative quality");
      else node.scalar_quality = q;
    }
    nodes.push_back(std::move(node));
  }

  std::sort(nodes.begin(), nodes.end(), [](const RawNode& a, const RawNode& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (nodes[i].id == nodes[i - 1].id) errors.add("id", nodes[i].id, "duplicate id");

  const std::size_t m = nodes.size();
  std::set<unsigned> present;
  for (const auto& node : nodes) present.insert(node.id);
  std::vector<std::pair<EcId, EcId>> edges;
  for (const auto& node : nodes) {
    if (node.id > m) errors.add("id", node.id, "ids must be contiguous 1..m");
    for (unsigned nb : node.neighbors) {
      if (!present.contains(nb)) errors.add("neighbors", node.id, "dangling edge to absent id " + std::to_string(nb));
      else if (nb == node.id) errors.add("neighbors", node.id, "self loop");
      else edges.emplace_back(EcId{node.id}, EcId{nb});
    }
  }
  errors.raise_if_any();

  Instance instance;
  instance.weights = weights;
  instance.hospital_budget = *hospital_budget;
  instance.patient_budget = *patient_budget;
  instance.graph = SocialGraph::from_edges(m, edges);
  instance.profiles.reserve(m);
  for (const auto& node : nodes) {
    EcProfile p;
    p.id = EcId{node.id};
    p.adapter_cost = Money(*node.adapter_cost);
    p.consult_cost = Money(*node.consult_cost);
    p.quality_params = node.params;
    p.quality = node.params ? compute_quality(*node.params, weights) : *node.scalar_quality;
    instance.profiles.push_back(std::move(p));
  }
  return instance;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Instance load_instance(const std::filesystem::path& path) {
  json raw;
  try {
    raw = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError({{"instance", std::nullopt, std::string("malformed JSON: ") + e.what()}});
  }
  return validate_instance(raw);
}

ordered_json instance_to_json(const Instance& instance) {
  ordered_json j;
  j["weights"] = ordered_json::array();
  for (const auto& w : instance.weights.w) j["weights"].push_back(format_decimal(w));
  j["hospital_budget"] = instance.hospital_budget.to_string();
  j["patient_budget"] = instance.patient_budget.to_string();
  j["nodes"] = ordered_json::array();
  for (const auto& p : instance.profiles) {
    ordered_json n;
    n["id"] = p.id.value;
    n["neighbors"] = ordered_json::array();
    for (EcId nb : instance.graph.neighbors(p.id)) n["neighbors"].push_back(nb.value);
    n["adapter_cost"] = p.adapter_cost.to_string();
    n["consult_cost"] = p.consult_cost.to_string();
    if (p.quality_params) {
      n["quality"] = {{"q", format_decimal(p.quality_params->qualification)},
                      {"sr", format_decimal(p.quality_params->success_rate)},
                      {"e", format_decimal(p.quality_params->experience)},
                      {"h", format_decimal(p.quality_params->hospital)}};
    } else {
      n["quality"] = format_decimal(p.quality);
    }
    j["nodes"].push_back(std::move(n));
  }
  return j;
}

std::string dump_instance(const Instance& instance) { return instance_to_json(instance).dump(1) + "\n"; }

BidProfile apply_bid_overrides(const json& raw, const Instance& instance) {
  Collector errors;
  BidProfile bids = BidProfile::truthful(instance);
  if (!raw.is_object()) {
    errors.add("bids", std::nullopt, "top level must be a JSON object");
    errors.raise();
  }
  for (const char* field : {"adapter_bids", "consult_bids"}) {
    if (!raw.contains(field)) continue;
    const auto& map = raw.at(field);
    if (!map.is_object()) {
      errors.add(field, std::nullopt, "expected an object keyed by id");
      continue;
    }
    for (const auto& [key, value] : map.items()) {
      unsigned id = 0;
      try {
        std::size_t used = 0;
        const long long parsed = std::stoll(key, &used);
        if (used != key.size() || parsed < 1) throw std::invalid_argument(key);
        id = static_cast<unsigned>(parsed);
      } catch (const std::exception&) {
        errors.add(field, std::nullopt, "bad id key '" + key + "'");
        continue;
      }
      if (!instance.contains(EcId{id})) {
        errors.add(field, id, "unknown id");
        continue;
      }
      auto amount = read_number(value, field, id, errors);
      if (!amount) continue;
      if (sgn(*amount) <= 0) {
        errors.add(field, id, "non-positive bid");
        continue;
      }
      if (std::string_view(field) == "adapter_bids") bids.set_adapter(EcId{id}, Money(*amount));
      else bids.set_consult(EcId{id}, Money(*amount));
    }
  }
  errors.raise_if_any();
  return bids;
}

BidProfile load_bids(const std::filesystem::path& path, const Instance& instance) {
  json raw;
  try {
    raw = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ValidationError({{"bids", std::nullopt, std::string("malformed JSON: ") + e.what()}});
  }
  return apply_bid_overrides(raw, instance);
}

ordered_json bids_to_json(const BidProfile& bids) {
  ordered_json j;
  j["adapter_bids"] = ordered_json::object();
  j["consult_bids"] = ordered_json::object();
  for (std::size_t i = 0; i < bids.size(); ++i) {
    const auto key = std::to_string(i + 1);
    j["adapter_bids"][key] = format_exact(bids.adapter_bids()[i].value());
    j["consult_bids"][key] = format_exact(bids.consult_bids()[i].value());
  }
  return j;
}

ordered_json outcome_to_json(const Outcome& outcome, bool leader_fold) {
  ordered_json j;
  j["winners"] = ordered_json::array();
  for (EcId id : outcome.winners) j["winners"].push_back(id.value);
  j["payments"] = ordered_json::object();
  j["payments_exact"] = ordered_json::object();
  for (const auto& [id, amount] : outcome.payments) {
    j["payments"][std::to_string(id.value)] = amount.to_string();
    j["payments_exact"][std::to_string(id.value)] = format_exact(amount.value());
  }
  j["total_payment"] = outcome.total_payment.to_string();
  j["total_payment_exact"] = format_exact(outcome.total_payment.value());
  if (leader_fold) {
    j["informed"] = ordered_json::array();
    for (EcId id : outcome.informed) j["informed"].push_back(id.value);
    j["candidate_set"] = ordered_json::array();
    for (EcId id : outcome.candidate_set) j["candidate_set"].push_back(id.value);
  }
  return j;
}

}  // namespace bfhire
