#include "bfhire/random_mechanism.hpp"

#include "bfhire/rng.hpp"

namespace bfhire {

Outcome random_select(const IdSet& candidates, const Money& budget, std::span<const Money> bids,
                      std::uint64_t seed) {
  std::vector<EcId> order(candidates.begin(), candidates.end());
  SplitMix64 rng(seed);
  shuffle(order, rng);

  Money remaining = budget;
  Outcome out;
  for (EcId id : order) {
    const Money& bid = bids[id.index()];
    if (bid <= remaining) {
      remaining -= bid;
      out.winners.push_back(id);
    }
  }
  pay_bids(out, bids);
  return out;
}

TwoFoldOutcome run_random(const Instance& instance, const BidProfile& bids, std::uint64_t seed) {
  TwoFoldOutcome result;
  const auto everyone = instance.ids();
  result.leaders = random_select(IdSet(everyone.begin(), everyone.end()), instance.hospital_budget,
                                 bids.adapter_bids(), derive_seed(seed, 1));
  Coverage cover(instance.graph);
  for (EcId id : result.leaders.winners) cover.add(id);
  result.leaders.informed = cover.covered_set();
  result.leaders.candidate_set = result.leaders.informed;
  result.leaders.candidate_set.insert(result.leaders.winners.begin(), result.leaders.winners.end());

  result.hires = random_select(result.leaders.candidate_set, instance.patient_budget,
                               bids.consult_bids(), derive_seed(seed, 2));
  return result;
}

}  // namespace bfhire
