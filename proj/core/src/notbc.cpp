#include "bfhire/notbc.hpp"

#include "ratio_greedy.hpp"

namespace bfhire {

Outcome notbc_li(const Instance& instance, const BidProfile& bids) {
  detail::RatioGreedy greedy(instance.graph, bids.adapter_bids());
  Money remaining = instance.hospital_budget;
  Outcome out;
  while (auto pick = greedy.best()) {
    const Money& bid = bids.adapter(pick->id);
    if (bid <= remaining) {
      greedy.accept(pick->id);
      remaining -= bid;
      out.winners.push_back(pick->id);
    } else {
      greedy.discard(pick->id);
    }
  }
  out.informed = greedy.coverage().covered_set();
  out.candidate_set = out.informed;
  out.candidate_set.insert(out.winners.begin(), out.winners.end());
  pay_bids(out, bids.adapter_bids());
  return out;
}

Outcome notbc_ds(const IdSet& candidates, const Instance& instance, const BidProfile& bids) {
  Money remaining = instance.patient_budget;
  Outcome out;
  for (EcId id : detail::quality_order(candidates, instance, bids.consult_bids())) {
    const Money& bid = bids.consult(id);
    if (bid <= remaining) {
      remaining -= bid;
      out.winners.push_back(id);
    }
  }
  pay_bids(out, bids.consult_bids());
  return out;
}

TwoFoldOutcome run_notbc(const Instance& instance, const BidProfile& bids) {
  TwoFoldOutcome result;
  result.leaders = notbc_li(instance, bids);
  result.hires = notbc_ds(result.leaders.candidate_set, instance, bids);
  return result;
}

}  // namespace bfhire
