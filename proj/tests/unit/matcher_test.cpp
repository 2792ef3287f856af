#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "pang/matcher.hpp"
#include "toy.hpp"

namespace pang {
namespace {

using fixtures::toy_g1;
using fixtures::toy_p1;
using fixtures::toy_p2;
using fixtures::toy_p3;

TEST(Matcher, SingleGreenEdgeOccursInG1) { EXPECT_TRUE(exists_general(toy_p3(), toy_g1())); }

TEST(Matcher, P1IsInducedInG1) {
  EXPECT_TRUE(exists_general(toy_p1(), toy_g1()));
  EXPECT_TRUE(exists_induced(toy_p1(), toy_g1()));
}

TEST(Matcher, P2IsGeneralButNotInducedInG1) {
  EXPECT_TRUE(exists_general(toy_p2(), toy_g1()));
  EXPECT_FALSE(exists_induced(toy_p2(), toy_g1()));
  EXPECT_EQ(count_occurrences(toy_p2(), toy_g1(), MatchMode::General), 1u);
  EXPECT_EQ(count_occurrences(toy_p2(), toy_g1(), MatchMode::Induced), 0u);
}

TEST(Matcher, LargerPatternNeverMatches) {
  const auto big = Pattern::from_graph(
      AttributedGraph({0, 1, 0, 1, 1, 0}, {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}, {3, 4, 0}, {4, 5, 0}}));
  EXPECT_FALSE(exists_general(big, toy_g1()));
  EXPECT_EQ(count_occurrences(big, toy_g1(), MatchMode::General), 0u);
}

TEST(Matcher, EveryPatternIsInducedInItself) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto g = oracle::random_connected_graph(rng, 5, 2, 2, 0.4);
    EXPECT_TRUE(exists_induced(Pattern::from_graph(g), g));
  }
}

TEST(Matcher, SingleVertexCountsLabeledVertices) {
  const auto g = toy_g1();
  EXPECT_EQ(count_occurrences(Pattern::from_graph(AttributedGraph({1}, {})), g, MatchMode::General), 3u);
  EXPECT_EQ(count_occurrences(Pattern::from_graph(AttributedGraph({0}, {})), g, MatchMode::Induced), 2u);
  EXPECT_EQ(count_occurrences(Pattern::from_graph(AttributedGraph({7}, {})), g, MatchMode::General), 0u);
}

TEST(Matcher, SymmetricEdgeCountsBothOrientations) {
  const AttributedGraph edge({0, 0}, {{0, 1, 0}});
  EXPECT_EQ(count_occurrences(Pattern::from_graph(edge), edge, MatchMode::General), 2u);
  EXPECT_EQ(count_occurrences(Pattern::from_graph(edge), edge, MatchMode::Induced), 2u);
}

TEST(Matcher, HundredRandomPairsAgreeWithExhaustiveSearch) {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::size_t> gsize(1, 7);
  std::uniform_int_distribution<std::size_t> psize(1, 4);
  int positives = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_connected_graph(rng, gsize(rng), 2, 2, 0.3);
    const auto p = trial % 2 == 0 ? oracle::random_subgraph(g, rng, 4, 5)
                                  : oracle::random_connected_graph(rng, psize(rng), 2, 2, 0.3);
    const auto pattern = Pattern::from_graph(p);
    const bool general = oracle::brute_count(p, g, false) > 0;
    const bool induced = oracle::brute_count(p, g, true) > 0;
    EXPECT_EQ(exists_general(pattern, g), general) << "trial " << trial;
    EXPECT_EQ(exists_induced(pattern, g), induced) << "trial " << trial;
    positives += general ? 1 : 0;
  }
  EXPECT_GE(positives, 50);
}

TEST(Matcher, CountsAgreeWithExhaustiveEnumeration) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> gsize(2, 7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = oracle::random_connected_graph(rng, gsize(rng), 2, 2, 0.4);
    const auto p = oracle::random_subgraph(g, rng, 4, 4);
    const PatternMatcher matcher(p);
    EXPECT_EQ(matcher.count(g, MatchMode::General), oracle::brute_count(p, g, false)) << "trial " << trial;
    EXPECT_EQ(matcher.count(g, MatchMode::Induced), oracle::brute_count(p, g, true)) << "trial " << trial;
  }
}

TEST(Matcher, InducedNeverExceedsGeneral) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_connected_graph(rng, 7, 2, 1, 0.5);
    const auto p = Pattern::from_graph(oracle::random_subgraph(g, rng, 4, 4));
    EXPECT_LE(count_occurrences(p, g, MatchMode::Induced), count_occurrences(p, g, MatchMode::General));
  }
}

}  // namespace
}  // namespace pang
