#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bfhire/model.hpp"

namespace bfhire::detail {

struct Pick {
  EcId id;
  std::uint64_t marginal;
};

/// Repeated argmax of (coverage gain / bid) over a shrinking pool, ties to
/// the lower id. Stale gains are upper bounds because coverage gain only
/// shrinks as the covered set grows, so entries are re-evaluated lazily.
class RatioGreedy {
 public:
  /// `bids` is indexed by EC index. `excluded` never enters the pool but
  /// stays coverable.
  RatioGreedy(const SocialGraph& graph, std::span<const Money> bids,
              std::optional<EcId> excluded = std::nullopt);

  /// Exact argmax over the remaining pool, or nullopt when it is empty.
  std::optional<Pick> best();
  /// Removes `id` from the pool and covers its neighbors.
  void accept(EcId id);
  /// Removes `id` from the pool without covering anything.
  void discard(EcId id);

  const Coverage& coverage() const noexcept { return coverage_; }

 private:
  struct Entry {
    EcId id;
    std::uint64_t marginal;
  };
  bool ranks_before(const Entry& a, const Entry& b) const;
  void pop_top();

  std::span<const Money> bids_;
  Coverage coverage_;
  std::vector<Entry> heap_;
  std::vector<char> removed_;
};

/// bid * (marginal + covered) <= budget * marginal, i.e. bid <= budget *
/// marginal / (marginal + covered). A zero marginal never passes.
bool proportional_share_holds(const Money& bid, const Rational& budget,
                              std::uint64_t marginal, std::uint64_t covered);

/// `candidates` sorted by quality per consult bid, descending, ties to the
/// lower id. Quality gains are additive, so this static order is the greedy
/// order.
std::vector<EcId> quality_order(const IdSet& candidates, const Instance& instance,
                                std::span<const Money> consult_bids);

}  // namespace bfhire::detail
