#include "bfhire/mechanism.hpp"

#include <stdexcept>
#include <string>

#include "bfhire/notbc.hpp"
#include "bfhire/random_mechanism.hpp"
#include "bfhire/tbc.hpp"

namespace bfhire {

std::string_view mechanism_name(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::NoTbc: return "notbc";
    case MechanismKind::Tbc: return "tbc";
    case MechanismKind::Random: return "random";
  }
  return "?";
}

MechanismKind parse_mechanism(std::string_view name) {
  if (name == "notbc") return MechanismKind::NoTbc;
  if (name == "tbc") return MechanismKind::Tbc;
  if (name == "random") return MechanismKind::Random;
  throw std::invalid_argument("unknown mechanism '" + std::string(name) + "'");
}

TwoFoldOutcome run_mechanism(const MechanismSpec& spec, const Instance& instance,
                             const BidProfile& bids) {
  switch (spec.kind) {
    case MechanismKind::NoTbc: return run_notbc(instance, bids);
    case MechanismKind::Tbc: return run_tbc(instance, bids);
    case MechanismKind::Random: return run_random(instance, bids, spec.seed);
  }
  throw std::invalid_argument("unknown mechanism");
}

void pay_bids(Outcome& outcome, std::span<const Money> bids) {
  outcome.payments.clear();
  for (EcId id : outcome.winners) outcome.payments.emplace(id, bids[id.index()]);
  sum_payments(outcome);
}

void sum_payments(Outcome& outcome) {
  Money total;
  for (const auto& [id, amount] : outcome.payments) total += amount;
  outcome.total_payment = total;
}

}  // namespace bfhire
