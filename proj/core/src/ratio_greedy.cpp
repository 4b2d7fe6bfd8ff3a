#include "ratio_greedy.hpp"

#include <algorithm>

namespace bfhire::detail {

RatioGreedy::RatioGreedy(const SocialGraph& graph, std::span<const Money> bids,
                         std::optional<EcId> excluded)
    : bids_(bids), coverage_(graph), removed_(graph.node_count(), 0) {
  heap_.reserve(graph.node_count());
  for (std::size_t i = 0; i < graph.node_count(); ++i) {
    const EcId id = EcId::from_index(i);
    if (excluded && *excluded == id) {
      removed_[i] = 1;
      continue;
    }
    heap_.push_back({id, graph.degree(id)});
  }
  std::make_heap(heap_.begin(), heap_.end(),
                 [this](const Entry& a, const Entry& b) { return ranks_before(b, a); });
}

bool RatioGreedy::ranks_before(const Entry& a, const Entry& b) const {
  // a.m / a.bid vs b.m / b.bid, cross-multiplied
  const Rational lhs = bids_[b.id.index()].value() * a.marginal;
  const Rational rhs = bids_[a.id.index()].value() * b.marginal;
  const int c = cmp(lhs, rhs);
  if (c != 0) return c > 0;
  return a.id < b.id;
}

void RatioGreedy::pop_top() {
  std::pop_heap(heap_.begin(), heap_.end(),
                [this](const Entry& a, const Entry& b) { return ranks_before(b, a); });
  heap_.pop_back();
}

std::optional<Pick> RatioGreedy::best() {
  const auto cmp_heap = [this](const Entry& a, const Entry& b) { return ranks_before(b, a); };
  while (!heap_.empty()) {
    Entry top = heap_.front();
    if (removed_[top.id.index()] != 0) {
      pop_top();
      continue;
    }
    const std::uint64_t fresh = coverage_.gain(top.id);
    if (fresh == top.marginal) return Pick{top.id, fresh};
    pop_top();
    heap_.push_back({top.id, fresh});
    std::push_heap(heap_.begin(), heap_.end(), cmp_heap);
  }
  return std::nullopt;
}

void RatioGreedy::accept(EcId id) {
  discard(id);
  coverage_.add(id);
}

void RatioGreedy::discard(EcId id) {
  removed_.at(id.index()) = 1;
  if (!heap_.empty() && heap_.front().id == id) pop_top();
}

bool proportional_share_holds(const Money& bid, const Rational& budget, std::uint64_t marginal,
                              std::uint64_t covered) {
  if (marginal == 0) return false;
  const Rational lhs = bid.value() * (marginal + covered);
  const Rational rhs = budget * marginal;
  return cmp(lhs, rhs) <= 0;
}

std::vector<EcId> quality_order(const IdSet& candidates, const Instance& instance,
                                std::span<const Money> consult_bids) {
  std::vector<EcId> order(candidates.begin(), candidates.end());
  std::stable_sort(order.begin(), order.end(), [&](EcId a, EcId b) {
    const Rational lhs = instance.quality(a) * consult_bids[b.index()].value();
    const Rational rhs = instance.quality(b) * consult_bids[a.index()].value();
    return cmp(lhs, rhs) > 0;
  });
  return order;
}

}  // namespace bfhire::detail
