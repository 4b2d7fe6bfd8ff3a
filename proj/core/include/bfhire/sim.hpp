#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bfhire/mechanism.hpp"
#include "bfhire/rng.hpp"

namespace bfhire {

/// Parameters of the random instance generator. Degree bounds are fractions
/// of n: every node gets degree in [ceil(min_degree_frac * n),
/// floor(max_degree_frac * n)].
struct GeneratorConfig {
  std::size_t n = 200;
  Rational min_degree_frac{1, 100};
  Rational max_degree_frac{1, 10};
  Money adapter_cost_lo{30}, adapter_cost_hi{50};
  Money consult_cost_lo{35}, consult_cost_hi{50};
  Rational quality_lo{20}, quality_hi{50};
  Money hospital_budget{100};
  Money patient_budget{100};
  std::uint64_t seed = 1;
  /// Degree-preserving edge swaps attempted, per edge.
  std::size_t swaps_per_edge = 10;

  /// Throws std::invalid_argument when the bounds or ranges are unusable.
  void validate() const;
  std::pair<std::size_t, std::size_t> degree_bounds() const;
};

/// Seed-deterministic instance: a degree sequence drawn uniformly from the
/// degree bounds (parity repaired on the first adjustable node), realized by
/// Havel-Hakimi and randomized by degree-preserving double-edge swaps; costs
/// and scalar qualities uniform over their ranges at 6 fractional digits.
/// Throws std::invalid_argument if no graphical sequence can be drawn.
Instance generate_instance(const GeneratorConfig& config);

/// Uniform draw from [lo, hi] on the 10^-6 grid.
Rational uniform_decimal(const Rational& lo, const Rational& hi, SplitMix64& rng);

struct ExperimentRow {
  MechanismKind mechanism = MechanismKind::Tbc;
  Money budget;
  std::uint64_t seed = 0;
  std::size_t interested_set_size = 0;  // |leaders + informed|
  std::size_t hired_count = 0;
  Money li_total_payment;
  Money ds_total_payment;
  std::size_t li_winners = 0;
  std::size_t ds_winners = 0;

  friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

/// One row per (mechanism, budget, seed), in that canonical order. The
/// instance for a seed is generate_instance(config with that seed) and both
/// budgets are set to the swept value. Random runs use the row seed.
std::vector<ExperimentRow> run_sweep(const GeneratorConfig& config,
                                     const std::vector<Money>& budgets,
                                     const std::vector<std::uint64_t>& seeds,
                                     const std::vector<MechanismKind>& mechanisms);

struct MetricSummary {
  double mean = 0;
  double stddev = 0;  // sample standard deviation; 0 for a single row
};

struct AggregateRow {
  MechanismKind mechanism = MechanismKind::Tbc;
  Money budget;
  std::size_t rows = 0;
  MetricSummary interested_set_size;
  MetricSummary hired_count;
  MetricSummary li_total_payment;
  MetricSummary ds_total_payment;
};

/// Grouped by (mechanism, budget) in canonical order. Throws
/// std::invalid_argument on empty input.
std::vector<AggregateRow> aggregate_metrics(const std::vector<ExperimentRow>& rows);

inline constexpr std::string_view kSweepCsvHeader =
    "mechanism,budget,seed,interested_set_size,hired_count,li_total_payment,ds_total_payment,"
    "li_winners,ds_winners";

void write_sweep_csv(std::ostream& os, const std::vector<ExperimentRow>& rows);
void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows);

/// "lo:hi:step" inclusive of hi when reached exactly.
std::vector<Money> parse_budget_range(std::string_view spec);

}  // namespace bfhire
