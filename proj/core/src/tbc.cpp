#include "bfhire/tbc.hpp"

#include <algorithm>
#include <stdexcept>

#include "ratio_greedy.hpp"

namespace bfhire {

Outcome tbc_li_allocate(const Instance& instance, const BidProfile& bids) {
  detail::RatioGreedy greedy(instance.graph, bids.adapter_bids());
  const Rational half_budget = instance.hospital_budget.value() / 2;
  Outcome out;
  while (auto pick = greedy.best()) {
    if (!detail::proportional_share_holds(bids.adapter(pick->id), half_budget, pick->marginal,
                                          greedy.coverage().value()))
      break;
    greedy.accept(pick->id);
    out.winners.push_back(pick->id);
  }
  out.informed = greedy.coverage().covered_set();
  out.candidate_set = out.informed;
  out.candidate_set.insert(out.winners.begin(), out.winners.end());
  return out;
}

PricingTrace tbc_li_threshold(const Instance& instance, const BidProfile& bids, EcId agent) {
  if (!instance.contains(agent))
    throw std::invalid_argument("unknown EC id " + std::to_string(agent.value));
  const Rational& budget = instance.hospital_budget.value();
  detail::RatioGreedy greedy(instance.graph, bids.adapter_bids(), agent);

  PricingTrace trace;
  trace.agent = agent;
  for (;;) {
    const auto pick = greedy.best();
    const Coverage& cover = greedy.coverage();

    PricingPoint point;
    point.position = trace.points.size() + 1;
    point.agent_marginal = cover.gain(agent);
    if (pick) {
      point.rival = pick->id;
      point.rival_marginal = pick->marginal;
    }
    if (point.agent_marginal == 0) {
      point.ratio_bound = Money();
      point.share_bound = Money();
    } else {
      if (pick && pick->marginal > 0)
        point.ratio_bound = bids.adapter(pick->id) *
                            Rational(Rational(point.agent_marginal) / Rational(pick->marginal));
      point.share_bound = Money(Rational(budget * point.agent_marginal /
                                         Rational(cover.value() + point.agent_marginal)));
    }
    point.bound = point.ratio_bound ? std::min(*point.ratio_bound, point.share_bound)
                                    : point.share_bound;
    trace.points.push_back(std::move(point));

    if (!pick) break;
    if (!detail::proportional_share_holds(bids.adapter(pick->id), budget, pick->marginal,
                                          cover.value()))
      break;  // first loser evaluated, stop
    greedy.accept(pick->id);
    ++trace.selected_without_agent;
  }

  for (const auto& p : trace.points) trace.payment = std::max(trace.payment, p.bound);
  return trace;
}

LeaderPricing tbc_li_price(const Instance& instance, const BidProfile& bids,
                           std::span<const EcId> winners) {
  LeaderPricing out;
  for (EcId id : winners) {
    auto trace = tbc_li_threshold(instance, bids, id);
    out.payments.emplace(id, trace.payment);
    out.traces.emplace(id, std::move(trace));
  }
  return out;
}

SelectionAllocation tbc_ds_allocate(const IdSet& candidates, const Instance& instance,
                                    const BidProfile& bids) {
  SelectionAllocation out;
  out.sorted_order = detail::quality_order(candidates, instance, bids.consult_bids());
  const Rational& budget = instance.patient_budget.value();
  Rational accepted_quality = 0;
  for (EcId id : out.sorted_order) {
    const Rational& q = instance.quality(id);
    if (sgn(q) == 0) continue;
    // bid / B' <= q / (q + D)  <=>  bid * (q + D) <= B' * q
    if (cmp(bids.consult(id).value() * (q + accepted_quality), budget * q) <= 0) {
      out.outcome.winners.push_back(id);
      accepted_quality += q;
    }
  }
  return out;
}

std::map<EcId, Money> tbc_ds_price(std::span<const EcId> winners,
                                   std::span<const EcId> sorted_order,
                                   const Instance& instance, const BidProfile& bids) {
  std::map<EcId, Money> payments;
  if (winners.empty()) return payments;

  std::size_t last = 0;
  for (EcId id : winners) {
    const auto it = std::find(sorted_order.begin(), sorted_order.end(), id);
    if (it == sorted_order.end())
      throw std::invalid_argument("winner " + std::to_string(id.value) + " missing from sorted order");
    last = std::max(last, static_cast<std::size_t>(it - sorted_order.begin()));
  }
  std::optional<EcId> successor;
  if (last + 1 < sorted_order.size()) successor = sorted_order[last + 1];

  const Rational total_quality = quality_value(winners, instance);
  const Rational& budget = instance.patient_budget.value();
  for (EcId id : winners) {
    const Rational& q = instance.quality(id);
    Money pay(Rational(q * budget / total_quality));
    if (successor && sgn(instance.quality(*successor)) > 0) {
      Money threshold(Rational(q * bids.consult(*successor).value() / instance.quality(*successor)));
      pay = std::min(pay, threshold);
    }
    payments.emplace(id, std::move(pay));
  }
  return payments;
}

TbcOutcome run_tbc(const Instance& instance, const BidProfile& bids) {
  TbcOutcome result;
  result.leaders = tbc_li_allocate(instance, bids);
  auto pricing = tbc_li_price(instance, bids, result.leaders.winners);
  result.leaders.payments = std::move(pricing.payments);
  result.leader_traces = std::move(pricing.traces);
  sum_payments(result.leaders);

  auto selection = tbc_ds_allocate(result.leaders.candidate_set, instance, bids);
  result.hires = std::move(selection.outcome);
  result.selection_order = std::move(selection.sorted_order);
  result.hires.payments = tbc_ds_price(result.hires.winners, result.selection_order, instance, bids);
  sum_payments(result.hires);
  return result;
}

}  // namespace bfhire
