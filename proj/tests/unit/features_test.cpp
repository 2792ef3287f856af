#include <gtest/gtest.h>

#include <vector>

#include "brute_force.hpp"
#include "pang/dataset_io.hpp"
#include "pang/error.hpp"
#include "pang/features.hpp"
#include "pang/miner.hpp"
#include "pang/pattern_select.hpp"
#include "toy.hpp"

namespace pang {
namespace {

std::vector<Pattern> toy_patterns() { return {fixtures::toy_p1(), fixtures::toy_p2(), fixtures::toy_p3()}; }

TEST(Representation, ParseAndPrint) {
  EXPECT_EQ(parse_representation("bin"), Representation::Binary);
  EXPECT_EQ(parse_representation("occ"), Representation::Integer);
  EXPECT_EQ(parse_representation("integer"), Representation::Integer);
  EXPECT_EQ(to_string(Representation::Binary), "bin");
  EXPECT_THROW(parse_representation("tfidf"), ArgumentError);
}

TEST(Vectorize, NoOccurrenceGivesZeroVector) {
  const std::vector<Pattern> ps{Pattern::from_graph(AttributedGraph({9, 9}, {{0, 1, 0}}))};
  EXPECT_EQ(vectorize(fixtures::toy_g1(), ps, Representation::Integer, MatchMode::General),
            (std::vector<std::uint64_t>{0}));
}

TEST(Vectorize, BinaryVectorsOfG3AndG4Coincide) {
  const auto ps = toy_patterns();
  const auto v3 = vectorize(fixtures::toy_g3(), ps, Representation::Binary, MatchMode::General);
  const auto v4 = vectorize(fixtures::toy_g4(), ps, Representation::Binary, MatchMode::General);
  EXPECT_EQ(v3, v4);
  EXPECT_EQ(v3, (std::vector<std::uint64_t>{0, 0, 1}));
  EXPECT_NE(fixtures::toy_g3(), fixtures::toy_g4());
}

TEST(Vectorize, IntegerVectorsMatchBruteForceCounts) {
  const auto ps = toy_patterns();
  const auto c = fixtures::toy_collection();
  for (MatchMode mode : {MatchMode::General, MatchMode::Induced}) {
    for (std::size_t g = 0; g < c.size(); ++g) {
      const auto v = vectorize(c.graph(g), ps, Representation::Integer, mode);
      for (std::size_t j = 0; j < ps.size(); ++j) {
        EXPECT_EQ(v[j], oracle::brute_count(ps[j].graph(), c.graph(g), mode == MatchMode::Induced));
      }
    }
  }
}

TEST(BuildMatrix, ToyCollectionShapeAndColumnOrder) {
  const auto ps = toy_patterns();
  const auto h = build_matrix(fixtures::toy_collection(), ps, Representation::Binary, PatternFamily::General);
  EXPECT_EQ(h.rows(), 4u);
  EXPECT_EQ(h.cols(), 3u);
  for (std::size_t j = 0; j < ps.size(); ++j) EXPECT_EQ(h.pattern_ids()[j], ps[j].code());
  EXPECT_EQ(h.at(0, 0), 1u);  // P1 in G1
  EXPECT_EQ(h.at(0, 1), 1u);  // P2 in G1 (general)
  EXPECT_EQ(h.at(2, 0), 0u);
}

TEST(BuildMatrix, InducedFamilyUsesInducedCounts) {
  const auto ps = toy_patterns();
  const auto h = build_matrix(fixtures::toy_collection(), ps, Representation::Binary, PatternFamily::Induced);
  EXPECT_EQ(h.at(0, 1), 0u);  // P2 has no induced occurrence in G1
  const auto g = build_matrix(fixtures::toy_collection(), ps, Representation::Binary, PatternFamily::Induced,
                              MatchMode::General);
  EXPECT_EQ(g.at(0, 1), 1u);
}

TEST(BuildMatrix, SingleGraphSinglePattern) {
  LabeledCollection c;
  c.add(fixtures::toy_g2(), GraphLabel::Anomalous);
  const std::vector<Pattern> ps{fixtures::toy_p3()};
  const auto h = build_matrix(c, ps, Representation::Binary, PatternFamily::General);
  ASSERT_EQ(h.rows(), 1u);
  ASSERT_EQ(h.cols(), 1u);
  EXPECT_EQ(h.at(0, 0), 1u);
}

TEST(BuildMatrix, BinaryIsIndicatorOfInteger) {
  std::mt19937_64 rng(17);
  const auto c = oracle::random_collection(rng, 15, 7, 2, 2, 0.3);
  MinerOptions o;
  o.minsup = MinSupport::absolute(2);
  o.max_vertices = 4;
  o.max_edges = 4;
  std::vector<Pattern> ps;
  for (auto& m : mine(c, o)) ps.push_back(m.pattern);
  for (auto family : {PatternFamily::General, PatternFamily::Induced}) {
    const auto bin = build_matrix(c, ps, Representation::Binary, family, MatchMode::Induced, 2);
    const auto occ = build_matrix(c, ps, Representation::Integer, family, MatchMode::Induced, 3);
    for (std::size_t r = 0; r < bin.rows(); ++r) {
      for (std::size_t j = 0; j < bin.cols(); ++j) EXPECT_EQ(bin.at(r, j), occ.at(r, j) >= 1 ? 1u : 0u);
    }
  }
}

TEST(FeatureMatrix, BinaryRowsRejectCounts) {
  FeatureMatrix h(1, {DfsCode::single_vertex(0)}, Representation::Binary, PatternFamily::General);
  const std::vector<std::uint64_t> bad{2};
  EXPECT_THROW(h.set_row(0, bad), ArgumentError);
  const std::vector<std::uint64_t> wrong_len{1, 0};
  EXPECT_THROW(h.set_row(0, wrong_len), ArgumentError);
}

TEST(BuildMatrix, MutagTopHundredHasNoZeroColumn) {
  const auto c = read_benchmark(PANG_DATA_DIR "/MUTAG");
  MinerOptions o;
  o.minsup = MinSupport::relative(0.1);
  std::vector<Pattern> mined;
  for (auto& m : mine(c, o)) mined.push_back(m.pattern);
  ASSERT_GE(mined.size(), 100u);
  const auto stats = compute_stats(mined, c, MatchMode::General, false);
  std::vector<double> scores;
  for (const auto& s : stats) scores.push_back(discrimination_score(s, {}));
  std::vector<Pattern> top;
  for (std::size_t i : select_top(mined, scores, stats, 100)) top.push_back(mined[i]);
  const auto h = build_matrix(c, top, Representation::Binary, PatternFamily::General);
  ASSERT_EQ(h.rows(), 188u);
  ASSERT_EQ(h.cols(), 100u);
  for (std::size_t j = 0; j < h.cols(); ++j) {
    std::uint64_t sum = 0;
    for (std::size_t r = 0; r < h.rows(); ++r) sum += h.at(r, j);
    EXPECT_GE(sum, 19u) << "column " << j;
  }
}

}  // namespace
}  // namespace pang
