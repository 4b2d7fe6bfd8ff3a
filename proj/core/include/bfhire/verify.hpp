#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bfhire/mechanism.hpp"

namespace bfhire {

struct PropertyViolation {
  std::string description;
  nlohmann::ordered_json witness;  // enough input to replay the failure
};

struct PropertyReport {
  /// Violations beyond this many are counted but not stored.
  static constexpr std::size_t kStoredViolations = 25;

  std::string property;
  std::size_t instances_tested = 0;
  std::size_t violation_count = 0;
  std::vector<PropertyViolation> violations;

  bool ok() const noexcept { return violation_count == 0; }
  void add_violation(std::string description, nlohmann::ordered_json witness);
  void merge(PropertyReport other);
};

nlohmann::ordered_json report_to_json(const PropertyReport& report);

// ---------------------------------------------------------------------------
// Outcome properties

/// Budget feasibility (sum of payments <= budget), individual rationality
/// (payment >= declared bid of that fold) and payments keyed exactly by the
/// winners with a consistent total.
PropertyReport check_outcome_properties(const Instance& instance, const BidProfile& bids,
                                        const Outcome& outcome, const Money& budget, Fold fold);

/// Checks both folds of `spec` on (instance, bids). Witnesses carry the
/// mechanism so replay_outcome_witness can rerun it.
PropertyReport check_mechanism_outcomes(const MechanismSpec& spec, const Instance& instance,
                                        const BidProfile& bids);

/// Re-checks a stored witness: reruns its mechanism when it names one,
/// otherwise re-checks the stored outcome.
PropertyReport replay_outcome_witness(const nlohmann::ordered_json& witness);

// ---------------------------------------------------------------------------
// Set-function properties

using SetFunction = std::function<Rational(std::span<const EcId>)>;

enum class SetFunctionClass {
  MonotoneSubmodular,  // normalized, monotone, diminishing returns
  Modular,             // normalized, monotone, marginals independent of context
};

/// Samples `trials` chains A <= B <= {1..universe} with an outsider i not in B
/// (and, for Modular, an independent set C) and checks the class.
PropertyReport check_set_function_properties(const SetFunction& f, std::size_t universe,
                                             SetFunctionClass expected, std::size_t trials,
                                             std::uint64_t seed, std::string name);

/// The coverage function of `graph`, expected monotone submodular.
PropertyReport check_set_function_properties(const SocialGraph& graph, std::size_t trials,
                                             std::uint64_t seed);

/// The additive quality function of `instance`, expected modular.
PropertyReport check_set_function_properties(const Instance& instance, std::size_t trials,
                                             std::uint64_t seed);

// ---------------------------------------------------------------------------
// Unilateral deviation oracle

struct DeviationReport {
  EcId agent;
  Fold fold = Fold::LeaderIdentification;
  Money true_bid;
  Money deviant_bid;
  Rational truthful_utility;  // payment - true cost when winning, else 0
  Rational deviant_utility;
  Rational gain;              // deviant_utility - truthful_utility
};

/// Allocation monotonicity failure: a lowered bid lost a win, or a raised bid
/// gained one.
struct MonotonicityWitness {
  EcId agent;
  Fold fold = Fold::LeaderIdentification;
  Money true_bid;
  Money deviant_bid;
  bool won_truthfully = false;
  bool won_deviating = false;
};

struct DeviationGrid {
  /// Multiplicative factors of the true bid, evenly spaced over [low, high].
  std::size_t steps = 25;
  Rational low_factor{1, 5};
  Rational high_factor{3};
  /// Adds the exact allocation boundaries and payments observed in truthful
  /// runs, where a finite grid would otherwise miss the flip.
  bool harvest_thresholds = true;
};

struct DeviationResult {
  std::vector<DeviationReport> profitable;       // gain > 0 only
  std::vector<MonotonicityWitness> monotonicity;
  std::size_t bids_tried = 0;
};

/// Utility comparison for one deviant bid; every other bid stays truthful.
/// Fold 2 only makes sense when the agent is in the truthful candidate set.
DeviationReport evaluate_deviation(const Instance& instance, const MechanismSpec& spec,
                                   EcId agent, Fold fold, const Money& deviant_bid);

/// Every grid bid of `agent`, in both folds. Reports are ordered by fold,
/// then deviant bid. Throws std::invalid_argument for unknown agents.
DeviationResult deviation_search(const Instance& instance, const MechanismSpec& spec, EcId agent,
                                 const DeviationGrid& grid = {});

/// The deviant bids deviation_search would try for (agent, fold), sorted.
std::vector<Money> deviation_bids(const Instance& instance, const MechanismSpec& spec, EcId agent,
                                  Fold fold, const DeviationGrid& grid);

nlohmann::ordered_json deviation_to_json(const DeviationReport& report);
nlohmann::ordered_json monotonicity_to_json(const MonotonicityWitness& witness);

// ---------------------------------------------------------------------------
// Suites

struct SuiteConfig {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t max_size = 8;
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyReport> properties;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  bool passed() const;
};

nlohmann::ordered_json suite_to_json(const SuiteReport& report);
std::string suite_summary(const SuiteReport& report);

/// Small random instance for the suites: m uniform in [4, max_size], degree
/// fractions (1/20, 1/2), generator cost ranges, budgets uniform in
/// [50, 400] on the 0.01 grid.
Instance generate_suite_instance(std::uint64_t seed, std::size_t max_size);

/// Budget feasibility and IR for all three mechanisms, both folds.
SuiteReport run_outcome_suite(const SuiteConfig& config);
/// Coverage (monotone submodular) and quality (modular) checks, 500 triples
/// per generated instance.
SuiteReport run_setfn_suite(const SuiteConfig& config);
/// Grid deviation search for every agent: TBC must show no profitable
/// deviation in either fold and no leader-fold monotonicity failure; NoTBC
/// must show at least one profitable deviation somewhere in the suite.
SuiteReport run_deviation_suite(const SuiteConfig& config);

}  // namespace bfhire
