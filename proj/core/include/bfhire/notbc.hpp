#pragma once

#include "bfhire/mechanism.hpp"

namespace bfhire {

/// Leader identification, pay-your-bid. Visits every doctor once in order of
/// best remaining coverage-gain per adapter bid (ties to the lower id) and
/// takes it whenever its bid fits the remaining hospital budget, even with
/// zero gain.
Outcome notbc_li(const Instance& instance, const BidProfile& bids);

/// Doctor selection, pay-your-bid: same scan over `candidates` ordered by
/// quality per consult bid, against the patient budget.
Outcome notbc_ds(const IdSet& candidates, const Instance& instance, const BidProfile& bids);

TwoFoldOutcome run_notbc(const Instance& instance, const BidProfile& bids);

}  // namespace bfhire
