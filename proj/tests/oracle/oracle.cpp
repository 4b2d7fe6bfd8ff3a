#include "oracle.hpp"

#include <algorithm>
#include <optional>

namespace oracle {
namespace {

std::size_t marginal(const Market& mk, unsigned i, const std::set<unsigned>& leaders) {
  std::set<unsigned> with = leaders;
  with.insert(i);
  return coverage(mk, with) - coverage(mk, leaders);
}

// Best remaining by gain/bid, ties to the lower id. a beats b iff
// g_a * c_b > g_b * c_a.
std::optional<unsigned> best_ratio(const std::set<unsigned>& remaining,
                                   const std::vector<Q>& gain, const std::vector<Q>& bid) {
  std::optional<unsigned> best;
  for (unsigned i : remaining) {
    if (!best || gain[i] * bid[*best] > gain[*best] * bid[i]) best = i;
  }
  return best;
}

std::vector<Q> coverage_gains(const Market& mk, const std::set<unsigned>& remaining,
                              const std::set<unsigned>& leaders) {
  std::vector<Q> g(mk.m + 1);
  for (unsigned i : remaining) g[i] = static_cast<unsigned long>(marginal(mk, i, leaders));
  return g;
}

std::set<unsigned> all_ids(const Market& mk) {
  std::set<unsigned> s;
  for (unsigned i = 1; i <= mk.m; ++i) s.insert(i);
  return s;
}

void finish_leaders(const Market& mk, FoldResult& r) {
  for (unsigned l : r.winners) {
    r.candidates.insert(l);
    r.candidates.insert(mk.chi[l].begin(), mk.chi[l].end());
  }
}

void pay_bids(FoldResult& r, const std::vector<Q>& bid) {
  for (unsigned w : r.winners) {
    r.payments[w] = bid[w];
    r.total += bid[w];
  }
}

FoldResult affordable_scan(std::set<unsigned> remaining, const std::vector<Q>& bid, Q budget,
                           const Market& mk, bool coverage_gain) {
  FoldResult r;
  std::set<unsigned> chosen;
  while (!remaining.empty()) {
    std::vector<Q> gain;
    if (coverage_gain) {
      gain = coverage_gains(mk, remaining, chosen);
    } else {
      gain = mk.quality;
    }
    const unsigned i = *best_ratio(remaining, gain, bid);
    remaining.erase(i);
    if (bid[i] <= budget) {
      budget -= bid[i];
      chosen.insert(i);
      r.winners.push_back(i);
    }
  }
  pay_bids(r, bid);
  return r;
}

}  // namespace

Market from_instance(const bfhire::Instance& instance, const bfhire::BidProfile& bids) {
  Market mk;
  mk.m = instance.size();
  mk.chi.resize(mk.m + 1);
  mk.adapter.resize(mk.m + 1);
  mk.consult.resize(mk.m + 1);
  mk.quality.resize(mk.m + 1);
  for (unsigned i = 1; i <= mk.m; ++i) {
    const bfhire::EcId id{i};
    for (auto n : instance.graph.neighbors(id)) mk.chi[i].insert(n.value);
    mk.adapter[i] = bids.adapter(id).value();
    mk.consult[i] = bids.consult(id).value();
    mk.quality[i] = instance.quality(id);
  }
  mk.hospital_budget = instance.hospital_budget.value();
  mk.patient_budget = instance.patient_budget.value();
  return mk;
}

std::size_t coverage(const Market& mk, const std::set<unsigned>& leaders) {
  std::set<unsigned> u;
  for (unsigned l : leaders) u.insert(mk.chi[l].begin(), mk.chi[l].end());
  return u.size();
}

Result notbc(const Market& mk) {
  Result r;
  r.leaders = affordable_scan(all_ids(mk), mk.adapter, mk.hospital_budget, mk, true);
  finish_leaders(mk, r.leaders);
  r.hires = affordable_scan(r.leaders.candidates, mk.consult, mk.patient_budget, mk, false);
  return r;
}

FoldResult tbc_leaders(const Market& mk) {
  FoldResult r;
  std::set<unsigned> remaining = all_ids(mk), chosen;
  const Q half = mk.hospital_budget / 2;
  while (!remaining.empty()) {
    const auto gain = coverage_gains(mk, remaining, chosen);
    const unsigned i = *best_ratio(remaining, gain, mk.adapter);
    const Q I = static_cast<unsigned long>(coverage(mk, chosen));
    if (gain[i] == 0 || mk.adapter[i] > half * gain[i] / (gain[i] + I)) break;
    remaining.erase(i);
    chosen.insert(i);
    r.winners.push_back(i);
  }
  finish_leaders(mk, r);
  return r;
}

Q tbc_leader_payment(const Market& mk, unsigned agent) {
  std::set<unsigned> remaining = all_ids(mk), chosen;
  remaining.erase(agent);
  const Q& B = mk.hospital_budget;
  Q payment = 0;
  for (;;) {
    const Q I = static_cast<unsigned long>(coverage(mk, chosen));
    const Q Mi = static_cast<unsigned long>(marginal(mk, agent, chosen));
    std::optional<unsigned> j;
    std::vector<Q> gain;
    if (!remaining.empty()) {
      gain = coverage_gains(mk, remaining, chosen);
      j = best_ratio(remaining, gain, mk.adapter);
    }
    Q bound = 0;
    if (Mi != 0) {
      const Q share = B * Mi / (I + Mi);
      bound = share;
      if (j && gain[*j] != 0) bound = std::min(bound, Q(Mi * mk.adapter[*j] / gain[*j]));
    }
    payment = std::max(payment, bound);
    if (!j) break;
    if (gain[*j] == 0 || mk.adapter[*j] > B * gain[*j] / (gain[*j] + I)) break;
    remaining.erase(*j);
    chosen.insert(*j);
  }
  return payment;
}

FoldResult tbc_hires(const Market& mk, const std::set<unsigned>& candidates) {
  FoldResult r;
  std::set<unsigned> remaining = candidates;
  while (!remaining.empty()) {
    const unsigned i = *best_ratio(remaining, mk.quality, mk.consult);
    r.order.push_back(i);
    remaining.erase(i);
  }
  Q D = 0;
  std::size_t last = 0;
  for (std::size_t k = 0; k < r.order.size(); ++k) {
    const unsigned i = r.order[k];
    const Q& q = mk.quality[i];
    if (q == 0) continue;
    if (mk.consult[i] <= mk.patient_budget * q / (q + D)) {
      r.winners.push_back(i);
      D += q;
      last = k;
    }
  }
  if (r.winners.empty()) return r;
  const bool has_succ = last + 1 < r.order.size() && mk.quality[r.order[last + 1]] != 0;
  for (unsigned w : r.winners) {
    Q pay = mk.quality[w] * mk.patient_budget / D;
    if (has_succ) {
      const unsigned s = r.order[last + 1];
      pay = std::min(pay, Q(mk.quality[w] * mk.consult[s] / mk.quality[s]));
    }
    r.payments[w] = pay;
    r.total += pay;
  }
  return r;
}

Result tbc(const Market& mk) {
  Result r;
  r.leaders = tbc_leaders(mk);
  for (unsigned w : r.leaders.winners) {
    r.leaders.payments[w] = tbc_leader_payment(mk, w);
    r.leaders.total += r.leaders.payments[w];
  }
  r.hires = tbc_hires(mk, r.leaders.candidates);
  return r;
}

std::uint64_t splitmix_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (stream * 0xD1B54A32D192ED03ULL);
  splitmix_next(state);
  return splitmix_next(state);
}

std::vector<unsigned> permutation(std::vector<unsigned> items, std::uint64_t seed) {
  std::uint64_t state = seed;
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t r;
    do r = splitmix_next(state);
    while (r < threshold);
    std::swap(items[i - 1], items[r % bound]);
  }
  return items;
}

Result random(const Market& mk, std::uint64_t seed) {
  auto pick = [](const std::set<unsigned>& cands, const std::vector<Q>& bid, Q budget,
                 std::uint64_t s) {
    FoldResult r;
    for (unsigned i : permutation({cands.begin(), cands.end()}, s)) {
      if (bid[i] <= budget) {
        budget -= bid[i];
        r.winners.push_back(i);
      }
    }
    pay_bids(r, bid);
    return r;
  };
  Result r;
  r.leaders = pick(all_ids(mk), mk.adapter, mk.hospital_budget, stream_seed(seed, 1));
  finish_leaders(mk, r.leaders);
  r.hires = pick(r.leaders.candidates, mk.consult, mk.patient_budget, stream_seed(seed, 2));
  return r;
}

}  // namespace oracle
