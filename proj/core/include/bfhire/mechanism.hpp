#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "bfhire/model.hpp"

namespace bfhire {

enum class MechanismKind { NoTbc, Tbc, Random };

std::string_view mechanism_name(MechanismKind kind);
/// Accepts "notbc", "tbc" or "random"; throws std::invalid_argument otherwise.
MechanismKind parse_mechanism(std::string_view name);

struct MechanismSpec {
  MechanismKind kind = MechanismKind::Tbc;
  std::uint64_t seed = 0;  // only read by Random
};

enum class Fold { LeaderIdentification = 1, DoctorSelection = 2 };

/// Both folds of the pipeline: leaders under the hospital budget, then hires
/// from the leaders' candidate set under the patient budget.
struct TwoFoldOutcome {
  Outcome leaders;
  Outcome hires;

  const Outcome& fold(Fold f) const {
    return f == Fold::LeaderIdentification ? leaders : hires;
  }
};

/// Dispatches to run_notbc, run_tbc or run_random.
TwoFoldOutcome run_mechanism(const MechanismSpec& spec, const Instance& instance,
                             const BidProfile& bids);

/// Fills payments = bids of the winners and the total.
void pay_bids(Outcome& outcome, std::span<const Money> bids);
void sum_payments(Outcome& outcome);

}  // namespace bfhire
