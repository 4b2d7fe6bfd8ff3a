#include <gtest/gtest.h>

#include "bfhire/social_graph.hpp"
#include "bfhire/verify.hpp"
#include "support.hpp"

namespace bfhire {
namespace {

using test::fixture_e1;

std::vector<EcId> ids(std::initializer_list<unsigned> v) {
  std::vector<EcId> out;
  for (unsigned x : v) out.push_back(EcId{x});
  return out;
}

TEST(SocialGraph, SymmetrizesAndDedupes) {
  const std::vector<std::pair<EcId, EcId>> edges{
      {EcId{1}, EcId{2}}, {EcId{2}, EcId{1}}, {EcId{2}, EcId{3}}};
  const auto g = SocialGraph::from_edges(3, edges);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(test::ids_of(std::vector<EcId>(g.neighbors(EcId{2}).begin(), g.neighbors(EcId{2}).end())),
            (std::vector<unsigned>{1, 3}));
  EXPECT_EQ(g.degree(EcId{1}), 1u);
  EXPECT_EQ(g.edges().size(), 2u);
}

TEST(SocialGraph, RejectsSelfLoopAndUnknownEndpoint) {
  const std::vector<std::pair<EcId, EcId>> loop{{EcId{1}, EcId{1}}};
  EXPECT_THROW(SocialGraph::from_edges(2, loop), std::invalid_argument);
  const std::vector<std::pair<EcId, EcId>> dangling{{EcId{1}, EcId{9}}};
  EXPECT_THROW(SocialGraph::from_edges(2, dangling), std::invalid_argument);
}

TEST(Activation, FixtureValues) {
  const auto inst = fixture_e1();
  EXPECT_EQ(activation_value({}, inst.graph), 0u);
  EXPECT_EQ(activation_value(ids({4}), inst.graph), 3u);
  EXPECT_EQ(activation_value(ids({4, 3}), inst.graph), 6u);
}

TEST(Activation, SingletonIsDegree) {
  const auto inst = fixture_e1();
  for (EcId id : inst.ids())
    EXPECT_EQ(activation_value(std::vector<EcId>{id}, inst.graph), inst.graph.degree(id));
}

TEST(Activation, UnknownIdThrows) {
  const auto inst = fixture_e1();
  EXPECT_THROW(activation_value(ids({7}), inst.graph), std::invalid_argument);
}

TEST(MarginalContribution, FixtureValues) {
  const auto inst = fixture_e1();
  EXPECT_EQ(marginal_contribution(EcId{4}, {}, inst.graph), 3u);
  EXPECT_EQ(marginal_contribution(EcId{3}, ids({4}), inst.graph), 3u);
  // node 5's only neighbor (4) is already covered by 3
  EXPECT_EQ(marginal_contribution(EcId{5}, ids({4, 3}), inst.graph), 0u);
}

TEST(MarginalContribution, AlreadyLeaderThrows) {
  const auto inst = fixture_e1();
  EXPECT_THROW(marginal_contribution(EcId{4}, ids({4}), inst.graph), std::invalid_argument);
}

TEST(MarginalContribution, EmptyBaseDominatesWithEqualityIffDisjoint) {
  const auto inst = fixture_e1();
  const auto all = inst.ids();
  for (EcId i : all) {
    for (unsigned mask = 0; mask < 64; ++mask) {
      std::vector<EcId> b;
      for (EcId x : all)
        if (x != i && (mask >> x.index() & 1U)) b.push_back(x);
      const auto at_empty = marginal_contribution(i, {}, inst.graph);
      const auto at_b = marginal_contribution(i, b, inst.graph);
      Coverage cover(inst.graph);
      for (EcId x : b) cover.add(x);
      bool disjoint = true;
      for (EcId n : inst.graph.neighbors(i)) disjoint = disjoint && !cover.covers(n);
      EXPECT_GE(at_empty, at_b);
      EXPECT_EQ(at_empty == at_b, disjoint);
    }
  }
}

TEST(Coverage, IncrementalMatchesActivation) {
  const auto inst = fixture_e1();
  Coverage cover(inst.graph);
  std::vector<EcId> chosen;
  for (unsigned id : {4u, 3u, 1u}) {
    const auto before = cover.value();
    EXPECT_EQ(cover.gain(EcId{id}), marginal_contribution(EcId{id}, chosen, inst.graph));
    const auto added = cover.add(EcId{id});
    EXPECT_EQ(added, cover.value() - before);
    chosen.push_back(EcId{id});
    EXPECT_EQ(cover.value(), activation_value(chosen, inst.graph));
  }
  EXPECT_EQ(test::ids_of(cover.covered_set()), (std::vector<unsigned>{1, 2, 3, 4, 5, 6}));
}

TEST(CoverageProperties, FixtureGraphIsMonotoneSubmodular) {
  const auto report = check_set_function_properties(fixture_e1().graph, 500, 11);
  EXPECT_TRUE(report.ok()) << report.violations.front().description;
}

TEST(CoverageProperties, GeneratedGraphsAreMonotoneSubmodular) {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const auto inst = generate_suite_instance(s, 20);
    const auto report = check_set_function_properties(inst.graph, 200, s);
    EXPECT_TRUE(report.ok()) << "seed " << s;
  }
}

}  // namespace
}  // namespace bfhire
