#include <gtest/gtest.h>

#include "bfhire/notbc.hpp"
#include "bfhire/tbc.hpp"
#include "bfhire/verify.hpp"
#include "support.hpp"

namespace bfhire {
namespace {

using test::fixture_e1;

TEST(OutcomeProperties, FixtureTbcSelectionClean) {
  const auto inst = fixture_e1();
  const auto bids = BidProfile::truthful(inst);
  const auto out = run_tbc(inst, bids);
  const auto r = check_outcome_properties(inst, bids, out.hires, inst.patient_budget, Fold::DoctorSelection);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(out.hires.total_payment, Money(8));
}

TEST(OutcomeProperties, UnderpaymentReportedWithReplayableWitness) {
  const auto inst = fixture_e1();
  const auto bids = BidProfile::truthful(inst);
  Outcome o;
  o.winners = {EcId{1}};
  o.payments.emplace(EcId{1}, Money(1));  // bid is 2
  o.total_payment = Money(1);
  const auto r = check_outcome_properties(inst, bids, o, inst.patient_budget, Fold::DoctorSelection);
  ASSERT_EQ(r.violation_count, 1u);
  EXPECT_NE(r.violations[0].description.find("individual rationality"), std::string::npos);
  const auto replay = replay_outcome_witness(r.violations[0].witness);
  ASSERT_EQ(replay.violation_count, 1u);
  EXPECT_EQ(replay.violations[0].description, r.violations[0].description);
}

TEST(OutcomeProperties, OverspendAndMismatchedKeys) {
  const auto inst = fixture_e1();
  const auto bids = BidProfile::truthful(inst);
  Outcome o;
  o.winners = {EcId{1}, EcId{4}};
  o.payments.emplace(EcId{1}, Money(9));
  o.total_payment = Money(9);
  const auto r = check_outcome_properties(inst, bids, o, inst.patient_budget, Fold::DoctorSelection);
  EXPECT_EQ(r.violation_count, 2u);  // keys and budget
}

TEST(OutcomeProperties, AllMechanismsCleanOnGeneratedInstances) {
  for (std::uint64_t s = 1; s <= 60; ++s) {
    const auto inst = generate_suite_instance(s, 30);
    for (auto kind : {MechanismKind::NoTbc, MechanismKind::Tbc, MechanismKind::Random}) {
      const auto r = check_mechanism_outcomes({kind, s}, inst, BidProfile::truthful(inst));
      EXPECT_TRUE(r.ok()) << mechanism_name(kind) << " seed " << s << ": "
                          << (r.violations.empty() ? "" : r.violations[0].description);
    }
  }
}

TEST(PropertyReport, CapsStoredViolations) {
  PropertyReport r;
  for (int k = 0; k < 40; ++k) r.add_violation("v", {});
  EXPECT_EQ(r.violation_count, 40u);
  EXPECT_EQ(r.violations.size(), PropertyReport::kStoredViolations);
  PropertyReport other;
  other.instances_tested = 3;
  other.add_violation("w", {});
  r.merge(other);
  EXPECT_EQ(r.violation_count, 41u);
  EXPECT_EQ(r.instances_tested, 3u);
}

TEST(SetFunctionChecker, FlagsSupermodularFunction) {
  // f(S) = |S|^2 grows faster on larger sets
  const SetFunction square = [](std::span<const EcId> s) {
    return Rational(static_cast<long>(s.size() * s.size()));
  };
  const auto r = check_set_function_properties(square, 8, SetFunctionClass::MonotoneSubmodular, 200, 1, "square");
  EXPECT_FALSE(r.ok());
  EXPECT_NE(r.violations[0].description.find("submodular"), std::string::npos);
}

TEST(SetFunctionChecker, FlagsNonModularAndNonMonotone) {
  const SetFunction cover = [](std::span<const EcId> s) { return Rational(s.empty() ? 0 : 1); };
  EXPECT_FALSE(check_set_function_properties(cover, 6, SetFunctionClass::Modular, 200, 1, "or").ok());
  const SetFunction shrinking = [](std::span<const EcId> s) { return Rational(-static_cast<long>(s.size())); };
  EXPECT_FALSE(
      check_set_function_properties(shrinking, 6, SetFunctionClass::MonotoneSubmodular, 200, 1, "neg").ok());
  const SetFunction offset = [](std::span<const EcId> s) { return Rational(static_cast<long>(s.size()) + 1); };
  EXPECT_FALSE(check_set_function_properties(offset, 6, SetFunctionClass::Modular, 10, 1, "offset").ok());
}

TEST(SetFunctionChecker, CoverageAndQualityPass) {
  const auto inst = fixture_e1();
  EXPECT_TRUE(check_set_function_properties(inst.graph, 500, 2).ok());
  EXPECT_TRUE(check_set_function_properties(inst, 500, 2).ok());
}

TEST(Deviation, IdentityBidGainsNothing) {
  const auto inst = fixture_e1();
  for (auto kind : {MechanismKind::NoTbc, MechanismKind::Tbc, MechanismKind::Random}) {
    for (EcId id : inst.ids()) {
      const auto r = evaluate_deviation(inst, {kind, 1}, id, Fold::LeaderIdentification,
                                        inst.profile(id).adapter_cost);
      EXPECT_EQ(r.gain, Rational(0));
      EXPECT_GE(r.truthful_utility, Rational(0));
    }
  }
}

TEST(Deviation, NotbcSlackOverbidIsFound) {
  const auto inst = test::make_instance({{{1, 2}}, {"2", "10"}, {}, {}, "5", "1"});
  const auto r = evaluate_deviation(inst, {MechanismKind::NoTbc, 0}, EcId{1}, Fold::LeaderIdentification, Money(5));
  EXPECT_EQ(r.gain, Rational(3));
  const auto search = deviation_search(inst, {MechanismKind::NoTbc, 0}, EcId{1});
  ASSERT_FALSE(search.profitable.empty());
  Rational best = 0;
  for (const auto& d : search.profitable) best = std::max(best, d.gain);
  EXPECT_EQ(best, Rational(3));
}

TEST(Deviation, GridContainsTruthAndHarvestedThresholds) {
  const auto inst = fixture_e1();
  const auto bids = deviation_bids(inst, {MechanismKind::Tbc, 0}, EcId{4}, Fold::LeaderIdentification, {});
  EXPECT_TRUE(std::is_sorted(bids.begin(), bids.end()));
  EXPECT_NE(std::find(bids.begin(), bids.end(), Money(2)), bids.end());
  EXPECT_NE(std::find(bids.begin(), bids.end(), Money(Rational(10, 3))), bids.end());
  EXPECT_NE(std::find(bids.begin(), bids.end(), Money(Rational(5, 3))), bids.end());  // share/2
  EXPECT_GE(bids.size(), 25u);
}

TEST(Deviation, UnknownAgentThrows) {
  const auto inst = fixture_e1();
  EXPECT_THROW(deviation_search(inst, {MechanismKind::Tbc, 0}, EcId{7}), std::invalid_argument);
}

TEST(Deviation, DoesNotMutateInstance) {
  const auto inst = fixture_e1();
  const auto copy = inst;
  deviation_search(inst, {MechanismKind::Tbc, 0}, EcId{3});
  EXPECT_EQ(inst, copy);
}

TEST(Deviation, TbcLeaderMonotoneOnSmallSuite) {
  for (std::uint64_t s = 1; s <= 25; ++s) {
    const auto inst = generate_suite_instance(s, 8);
    for (EcId id : inst.ids()) {
      const auto r = deviation_search(inst, {MechanismKind::Tbc, s}, id);
      for (const auto& m : r.monotonicity) EXPECT_NE(m.fold, Fold::LeaderIdentification) << "seed " << s;
    }
  }
}

TEST(Suites, SmallRunsProduceReports) {
  const SuiteConfig cfg{5, 3, 8};
  const auto outcome = run_outcome_suite(cfg);
  EXPECT_TRUE(outcome.passed());
  EXPECT_EQ(outcome.properties.size(), 3u);
  const auto setfn = run_setfn_suite(cfg);
  EXPECT_TRUE(setfn.passed());
  const auto j = suite_to_json(setfn);
  EXPECT_EQ(j["suite"], "setfn");
  EXPECT_NE(suite_summary(setfn).find("PASS"), std::string::npos);
}

TEST(Suites, InstanceGeneratorRespectsSize) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto inst = generate_suite_instance(s, 8);
    EXPECT_GE(inst.size(), 4u);
    EXPECT_LE(inst.size(), 8u);
    EXPECT_GE(inst.hospital_budget, Money(50));
    EXPECT_LE(inst.hospital_budget, Money(400));
  }
  EXPECT_THROW(generate_suite_instance(1, 3), std::invalid_argument);
}

}  // namespace
}  // namespace bfhire
