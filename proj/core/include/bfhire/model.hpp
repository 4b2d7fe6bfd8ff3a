#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "bfhire/error.hpp"
#include "bfhire/ids.hpp"
#include "bfhire/money.hpp"
#include "bfhire/social_graph.hpp"

namespace bfhire {

/// Raw quality attributes of a doctor. `hospital` is a numeric score for the
/// doctor's hospital, supplied by the caller.
struct QualityParams {
  Rational qualification;
  Rational success_rate;
  Rational experience;
  Rational hospital;

  friend bool operator==(const QualityParams&, const QualityParams&) = default;
};

/// Convex weights over the four quality attributes.
struct QualityWeights {
  std::array<Rational, 4> w{Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};

  /// Empty when every weight lies in [0,1] and they sum to exactly 1.
  std::vector<Violation> validate() const;

  friend bool operator==(const QualityWeights&, const QualityWeights&) = default;
};

/// Weighted sum of the attributes. Throws ValidationError on invalid weights.
Rational compute_quality(const QualityParams& params, const QualityWeights& weights);

struct EcProfile {
  EcId id;
  Money adapter_cost;  // true cost of acting as a leader
  Money consult_cost;  // true cost of the consultancy
  std::optional<QualityParams> quality_params;  // absent when quality was given as a scalar
  Rational quality;

  friend bool operator==(const EcProfile&, const EcProfile&) = default;
};

struct Instance {
  SocialGraph graph;
  std::vector<EcProfile> profiles;  // profiles[i].id == i + 1
  QualityWeights weights;
  Money hospital_budget;
  Money patient_budget;

  std::size_t size() const noexcept { return profiles.size(); }
  bool contains(EcId id) const noexcept { return id.value >= 1 && id.value <= profiles.size(); }
  /// Throws std::invalid_argument for unknown ids.
  const EcProfile& profile(EcId id) const;
  const Rational& quality(EcId id) const { return profile(id).quality; }
  std::vector<EcId> ids() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Declared costs, one per EC and fold. Separate from the true costs kept in
/// EcProfile so that mechanisms never see the latter.
class BidProfile {
 public:
  BidProfile() = default;
  BidProfile(std::vector<Money> adapter, std::vector<Money> consult);

  /// Bids equal to the true costs.
  static BidProfile truthful(const Instance& instance);

  std::size_t size() const noexcept { return adapter_.size(); }
  const Money& adapter(EcId id) const { return adapter_.at(id.index()); }
  const Money& consult(EcId id) const { return consult_.at(id.index()); }
  std::span<const Money> adapter_bids() const noexcept { return adapter_; }
  std::span<const Money> consult_bids() const noexcept { return consult_; }

  /// Throws std::invalid_argument on non-positive bids.
  void set_adapter(EcId id, Money bid);
  void set_consult(EcId id, Money bid);

  /// Violations for missing entries or non-positive bids.
  std::vector<Violation> validate(const Instance& instance) const;

  friend bool operator==(const BidProfile&, const BidProfile&) = default;

 private:
  std::vector<Money> adapter_;
  std::vector<Money> consult_;
};

/// Result of one fold: winners in selection order and what each is paid.
struct Outcome {
  std::vector<EcId> winners;
  std::map<EcId, Money> payments;
  Money total_payment;
  IdSet informed;       // leader fold only: nodes adjacent to some leader
  IdSet candidate_set;  // leader fold only: leaders plus informed

  bool won(EcId id) const;
};

/// Sum of qualities over `subset`. Throws std::invalid_argument on unknown ids.
Rational quality_value(std::span<const EcId> subset, const Instance& instance);

/// Quality gained by adding `candidate` to `selected`. Throws
/// std::invalid_argument if it is already selected.
Rational quality_contribution(EcId candidate, std::span<const EcId> selected,
                              const Instance& instance);

}  // namespace bfhire
