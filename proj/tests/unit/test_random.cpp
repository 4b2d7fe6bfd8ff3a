#include <gtest/gtest.h>

#include "bfhire/random_mechanism.hpp"
#include "bfhire/verify.hpp"
#include "bfhire/rng.hpp"
#include "oracle.hpp"
#include "support.hpp"

namespace bfhire {
namespace {

using test::fixture_e1;
using test::ids_of;

IdSet everyone(const Instance& inst) {
  const auto ids = inst.ids();
  return {ids.begin(), ids.end()};
}

TEST(SplitMix64, KnownSequence) {
  // first outputs of SplitMix64 seeded with 1234567
  SplitMix64 rng(1234567);
  EXPECT_EQ(rng.next(), 6457827717110365317ULL);
  EXPECT_EQ(rng.next(), 3203168211198807973ULL);
  EXPECT_EQ(rng.next(), 9817491932198370423ULL);
}

TEST(SplitMix64, BelowStaysInRange) {
  SplitMix64 rng(3);
  for (std::uint64_t bound : {1ULL, 2ULL, 7ULL, 1000ULL, (1ULL << 63) + 5})
    for (int k = 0; k < 200; ++k) EXPECT_LT(rng.below(bound), bound);
}

TEST(Shuffle, IsPermutationAndMatchesReplay) {
  std::vector<unsigned> items{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto mine = items;
    SplitMix64 rng(seed);
    shuffle(mine, rng);
    EXPECT_EQ(mine, oracle::permutation(items, seed));
    auto sorted = mine;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, items);
  }
}

TEST(RandomSelect, ZeroBudget) {
  const auto inst = fixture_e1();
  EXPECT_TRUE(random_select(everyone(inst), Money(), BidProfile::truthful(inst).adapter_bids(), 4)
                  .winners.empty());
}

TEST(RandomSelect, LargeBudgetTakesAllInPermutationOrder) {
  const auto inst = fixture_e1();
  const auto out =
      random_select(everyone(inst), Money(100), BidProfile::truthful(inst).adapter_bids(), 17);
  EXPECT_EQ(ids_of(out.winners), oracle::permutation({1, 2, 3, 4, 5, 6}, 17));
  EXPECT_EQ(out.total_payment, Money::parse("16.5"));
}

TEST(RandomSelect, FixtureMatchesReplay) {
  const auto inst = fixture_e1();
  const auto bids = BidProfile::truthful(inst);
  const auto mk = oracle::from_instance(inst, bids);
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 987654321ULL}) {
    const auto mine = run_random(inst, bids, seed);
    const auto ref = oracle::random(mk, seed);
    EXPECT_EQ(ids_of(mine.leaders.winners), ref.leaders.winners);
    EXPECT_EQ(ids_of(mine.hires.winners), ref.hires.winners);
    EXPECT_LE(mine.leaders.total_payment, inst.hospital_budget);
    EXPECT_LE(mine.hires.total_payment, inst.patient_budget);
  }
}

TEST(RandomSelect, SameSeedSameOutcome) {
  const auto inst = generate_suite_instance(5, 30);
  const auto bids = BidProfile::truthful(inst);
  const auto a = run_random(inst, bids, 77);
  const auto b = run_random(inst, bids, 77);
  EXPECT_EQ(a.leaders.winners, b.leaders.winners);
  EXPECT_EQ(a.hires.payments, b.hires.payments);
}

TEST(RandomSelect, PaysBids) {
  const auto inst = generate_suite_instance(9, 30);
  const auto bids = BidProfile::truthful(inst);
  const auto out = run_random(inst, bids, 3);
  for (EcId w : out.leaders.winners) EXPECT_EQ(out.leaders.payments.at(w), bids.adapter(w));
  for (EcId w : out.hires.winners) EXPECT_EQ(out.hires.payments.at(w), bids.consult(w));
}

}  // namespace
}  // namespace bfhire
