#pragma once

#include <cstdint>
#include <span>

#include "bfhire/mechanism.hpp"

namespace bfhire {

/// Benchmark selection: shuffles `candidates` (ascending ids, then
/// bfhire::shuffle with SplitMix64(seed)) and takes each doctor whose bid fits
/// the remaining budget. Pays bids. `bids` is indexed by EC index.
Outcome random_select(const IdSet& candidates, const Money& budget, std::span<const Money> bids,
                      std::uint64_t seed);

/// Random leaders under B (stream 1 of `seed`), then random hires from their
/// candidate set under B' (stream 2).
TwoFoldOutcome run_random(const Instance& instance, const BidProfile& bids, std::uint64_t seed);

}  // namespace bfhire
