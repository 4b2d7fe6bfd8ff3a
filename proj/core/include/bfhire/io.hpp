#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "bfhire/model.hpp"

namespace bfhire {

/// Checks parsed instance JSON and builds a canonical Instance (profiles
/// sorted by id, neighbor lists symmetrized). Collects every problem found
/// and throws ValidationError listing them; the first is the most basic.
///
/// Expected layout:
///   { "weights": ["0.25", ...4],
///     "hospital_budget": "10", "patient_budget": "8",
///     "nodes": [ { "id": 1, "neighbors": [3], "adapter_cost": "2",
///                  "consult_cost": "2",
///                  "quality": "5"  or  {"q": .., "sr": .., "e": .., "h": ..} } ] }
/// Ids must be exactly 1..m. Money and quality fields are decimal strings.
Instance validate_instance(const nlohmann::json& raw);

/// Reads and validates an instance file. Parse failures surface as
/// ValidationError too.
Instance load_instance(const std::filesystem::path& path);

nlohmann::ordered_json instance_to_json(const Instance& instance);

/// Serialized instance text, as written by `gen`. Byte-stable for equal input.
std::string dump_instance(const Instance& instance);

/// Truthful bids overridden by the entries of a bid file:
///   { "adapter_bids": {"4": "2.5"}, "consult_bids": {"1": "3"} }
/// Either map may be partial or absent.
BidProfile apply_bid_overrides(const nlohmann::json& raw, const Instance& instance);
BidProfile load_bids(const std::filesystem::path& path, const Instance& instance);

nlohmann::ordered_json bids_to_json(const BidProfile& bids);

/// Winners, payments (6-digit decimal and exact), totals and, for the leader
/// fold, informed and candidate sets.
nlohmann::ordered_json outcome_to_json(const Outcome& outcome, bool leader_fold);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace bfhire
