#include "bfhire/social_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bfhire {

SocialGraph SocialGraph::from_edges(std::size_t node_count,
                                    std::span<const std::pair<EcId, EcId>> edges) {
  SocialGraph g;
  g.adjacency_.resize(node_count);
  for (const auto& [a, b] : edges) {
    if (!g.contains(a) || !g.contains(b))
      throw std::invalid_argument("edge " + std::to_string(a.value) + "-" +
                                  std::to_string(b.value) + " references an absent node");
    if (a == b) throw std::invalid_argument("self loop on node " + std::to_string(a.value));
    g.adjacency_[a.index()].push_back(b);
    g.adjacency_[b.index()].push_back(a);
  }
  std::size_t directed = 0;
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    directed += list.size();
  }
  g.edge_count_ = directed / 2;
  return g;
}

std::vector<std::pair<EcId, EcId>> SocialGraph::edges() const {
  std::vector<std::pair<EcId, EcId>> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    const EcId a = EcId::from_index(i);
    for (EcId b : adjacency_[i])
      if (a < b) out.emplace_back(a, b);
  }
  return out;
}

Coverage::Coverage(const SocialGraph& graph)
    : graph_(&graph), covered_(graph.node_count(), 0) {}

std::uint64_t Coverage::gain(EcId id) const {
  std::uint64_t fresh = 0;
  for (EcId n : graph_->neighbors(id)) fresh += covered_[n.index()] == 0;
  return fresh;
}

std::uint64_t Coverage::add(EcId id) {
  std::uint64_t fresh = 0;
  for (EcId n : graph_->neighbors(id)) {
    auto& flag = covered_[n.index()];
    if (flag == 0) {
      flag = 1;
      ++fresh;
    }
  }
  value_ += fresh;
  return fresh;
}

IdSet Coverage::covered_set() const {
  IdSet out;
  for (std::size_t i = 0; i < covered_.size(); ++i)
    if (covered_[i] != 0) out.insert(EcId::from_index(i));
  return out;
}

namespace {

void require_known(EcId id, const SocialGraph& graph) {
  if (!graph.contains(id))
    throw std::invalid_argument("unknown EC id " + std::to_string(id.value));
}

}  // namespace

std::uint64_t activation_value(std::span<const EcId> leaders, const SocialGraph& graph) {
  Coverage cover(graph);
  for (EcId id : leaders) {
    require_known(id, graph);
    cover.add(id);
  }
  return cover.value();
}

std::uint64_t marginal_contribution(EcId candidate, std::span<const EcId> leaders,
                                    const SocialGraph& graph) {
  require_known(candidate, graph);
  if (std::find(leaders.begin(), leaders.end(), candidate) != leaders.end())
    throw std::invalid_argument("EC " + std::to_string(candidate.value) + " is already a leader");
  Coverage cover(graph);
  for (EcId id : leaders) {
    require_known(id, graph);
    cover.add(id);
  }
  return cover.gain(candidate);
}

}  // namespace bfhire
