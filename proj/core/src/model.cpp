#include "bfhire/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace bfhire {

std::string Violation::describe() const {
  std::ostringstream os;
  os << field;
  if (id) os << " (id " << *id << ")";
  os << ": " << message;
  return os.str();
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(violations.empty() ? std::string("validation failed")
                                            : violations.front().describe()),
      violations_(std::move(violations)) {}

std::vector<Violation> QualityWeights::validate() const {
  std::vector<Violation> out;
  Rational sum = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sgn(w[i]) < 0 || cmp(w[i], 1) > 0)
      out.push_back({"weights[" + std::to_string(i) + "]", std::nullopt, "weight outside [0,1]"});
    sum += w[i];
  }
  if (sum != 1) out.push_back({"weights", std::nullopt, "weight sum is " + format_exact(sum) + ", not 1"});
  return out;
}

Rational compute_quality(const QualityParams& p, const QualityWeights& weights) {
  if (auto problems = weights.validate(); !problems.empty())
    throw ValidationError(std::move(problems));
  const auto& w = weights.w;
  return Rational(w[0] * p.qualification + w[1] * p.success_rate + w[2] * p.experience +
                  w[3] * p.hospital);
}

const EcProfile& Instance::profile(EcId id) const {
  if (!contains(id)) throw std::invalid_argument("unknown EC id " + std::to_string(id.value));
  return profiles[id.index()];
}

std::vector<EcId> Instance::ids() const {
  std::vector<EcId> out;
  out.reserve(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i) out.push_back(EcId::from_index(i));
  return out;
}

BidProfile::BidProfile(std::vector<Money> adapter, std::vector<Money> consult)
    : adapter_(std::move(adapter)), consult_(std::move(consult)) {
  if (adapter_.size() != consult_.size())
    throw std::invalid_argument("adapter and consult bid counts differ");
}

BidProfile BidProfile::truthful(const Instance& instance) {
  std::vector<Money> adapter, consult;
  adapter.reserve(instance.size());
  consult.reserve(instance.size());
  for (const auto& p : instance.profiles) {
    adapter.push_back(p.adapter_cost);
    consult.push_back(p.consult_cost);
  }
  return BidProfile(std::move(adapter), std::move(consult));
}

void BidProfile::set_adapter(EcId id, Money bid) {
  if (!bid.is_positive()) throw std::invalid_argument("non-positive bid");
  adapter_.at(id.index()) = std::move(bid);
}

void BidProfile::set_consult(EcId id, Money bid) {
  if (!bid.is_positive()) throw std::invalid_argument("non-positive bid");
  consult_.at(id.index()) = std::move(bid);
}

std::vector<Violation> BidProfile::validate(const Instance& instance) const {
  std::vector<Violation> out;
  if (adapter_.size() != instance.size() || consult_.size() != instance.size()) {
    out.push_back({"bids", std::nullopt, "bid profile does not cover every EC exactly once"});
    return out;
  }
  for (std::size_t i = 0; i < adapter_.size(); ++i) {
    const auto id = static_cast<unsigned>(i + 1);
    if (!adapter_[i].is_positive()) out.push_back({"adapter_bid", id, "non-positive bid"});
    if (!consult_[i].is_positive()) out.push_back({"consult_bid", id, "non-positive bid"});
  }
  return out;
}

bool Outcome::won(EcId id) const {
  return std::find(winners.begin(), winners.end(), id) != winners.end();
}

Rational quality_value(std::span<const EcId> subset, const Instance& instance) {
  Rational total = 0;
  for (EcId id : subset) total += instance.quality(id);
  return total;
}

Rational quality_contribution(EcId candidate, std::span<const EcId> selected,
                              const Instance& instance) {
  const Rational& q = instance.quality(candidate);
  if (std::find(selected.begin(), selected.end(), candidate) != selected.end())
    throw std::invalid_argument("EC " + std::to_string(candidate.value) + " is already selected");
  for (EcId id : selected) (void)instance.profile(id);
  // D is additive, so the contribution never depends on `selected`.
  return q;
}

}  // namespace bfhire
