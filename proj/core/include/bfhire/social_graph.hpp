#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bfhire/ids.hpp"

namespace bfhire {

/// Undirected professional-connection graph over ECs 1..n. Neighbor lists
/// are sorted and never contain the node itself.
class SocialGraph {
 public:
  SocialGraph() = default;

  /// Builds the graph from an undirected edge list. Duplicate edges collapse.
  /// Throws std::invalid_argument on self-loops or endpoints outside 1..n.
  static SocialGraph from_edges(std::size_t node_count,
                                std::span<const std::pair<EcId, EcId>> edges);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool contains(EcId id) const noexcept {
    return id.value >= 1 && id.value <= adjacency_.size();
  }
  std::span<const EcId> neighbors(EcId id) const { return adjacency_.at(id.index()); }
  std::size_t degree(EcId id) const { return neighbors(id).size(); }

  /// Each undirected edge once, as (lower id, higher id), sorted.
  std::vector<std::pair<EcId, EcId>> edges() const;

  friend bool operator==(const SocialGraph&, const SocialGraph&) = default;

 private:
  std::vector<std::vector<EcId>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Running union of the neighbor sets of a growing leader set.
class Coverage {
 public:
  explicit Coverage(const SocialGraph& graph);

  std::uint64_t value() const noexcept { return value_; }
  bool covers(EcId id) const { return covered_.at(id.index()) != 0; }
  /// Number of id's neighbors not yet covered.
  std::uint64_t gain(EcId id) const;
  /// Covers id's neighbors; returns the gain.
  std::uint64_t add(EcId id);
  IdSet covered_set() const;

 private:
  const SocialGraph* graph_;
  std::vector<char> covered_;
  std::uint64_t value_ = 0;
};

/// Coverage value of a leader set: the number of distinct nodes adjacent to
/// at least one leader. Leaders themselves count when some other leader is
/// adjacent to them. Throws std::invalid_argument on unknown ids.
std::uint64_t activation_value(std::span<const EcId> leaders, const SocialGraph& graph);

/// activation_value(leaders + candidate) - activation_value(leaders).
/// Throws std::invalid_argument if candidate is already a leader.
std::uint64_t marginal_contribution(EcId candidate, std::span<const EcId> leaders,
                                    const SocialGraph& graph);

}  // namespace bfhire
