#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bfhire/mechanism.hpp"

namespace bfhire {

/// One evaluation position of the leader-fold threshold payment: the agent
/// is imagined in place of the doctor ranked `position` in the run without
/// it.
struct PricingPoint {
  std::size_t position = 0;           // 1-based
  std::optional<EcId> rival;          // absent past the end of an exhausted market
  std::uint64_t agent_marginal = 0;   // agent's gain on the rival's prefix
  std::uint64_t rival_marginal = 0;
  std::optional<Money> ratio_bound;   // highest bid still out-ranking the rival; absent = unbounded
  Money share_bound;                  // budget * agent_marginal / coverage with the agent
  Money bound;                        // min of the two

  friend bool operator==(const PricingPoint&, const PricingPoint&) = default;
};

struct PricingTrace {
  EcId agent;
  std::vector<PricingPoint> points;
  std::size_t selected_without_agent = 0;  // leaders chosen in the run without the agent
  Money payment;                           // max of the point bounds

  friend bool operator==(const PricingTrace&, const PricingTrace&) = default;
};

/// Leader identification allocation. Takes the remaining doctor with the best
/// coverage gain per bid (ties to the lower id) while
///   bid <= (B / 2) * gain / (gain + current coverage),
/// stopping at the first doctor that fails. Payments are left empty.
Outcome tbc_li_allocate(const Instance& instance, const BidProfile& bids);

/// Threshold payment for `agent` (winner or not). The agent's own bid is
/// never read: it is removed from the market as a bidder but stays
/// coverable. The run without it uses the full budget B in the share
/// condition, and its first failing doctor is the last evaluation position.
PricingTrace tbc_li_threshold(const Instance& instance, const BidProfile& bids, EcId agent);

struct LeaderPricing {
  std::map<EcId, Money> payments;
  std::map<EcId, PricingTrace> traces;
};

LeaderPricing tbc_li_price(const Instance& instance, const BidProfile& bids,
                           std::span<const EcId> winners);

struct SelectionAllocation {
  Outcome outcome;               // payments empty
  std::vector<EcId> sorted_order;
};

/// Doctor selection allocation. Scans all candidates by quality per consult
/// bid (ties to the lower id) and accepts each one with
///   bid / B' <= Q / (Q + D(accepted so far)).
SelectionAllocation tbc_ds_allocate(const IdSet& candidates, const Instance& instance,
                                    const BidProfile& bids);

/// Pays each winner min{ Q * B' / D(winners), Q * bid_next / Q_next } where
/// "next" follows the last winner in the sorted order; without a successor
/// the proportional share alone.
std::map<EcId, Money> tbc_ds_price(std::span<const EcId> winners,
                                   std::span<const EcId> sorted_order,
                                   const Instance& instance, const BidProfile& bids);

struct TbcOutcome : TwoFoldOutcome {
  std::map<EcId, PricingTrace> leader_traces;
  std::vector<EcId> selection_order;
};

TbcOutcome run_tbc(const Instance& instance, const BidProfile& bids);

}  // namespace bfhire
