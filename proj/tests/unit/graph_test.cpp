#include <gtest/gtest.h>

#include <vector>

#include "pang/error.hpp"
#include "pang/graph.hpp"
#include "toy.hpp"

namespace pang {
namespace {

TEST(AttributedGraph, BuildsSortedAdjacency) {
  AttributedGraph g({3, 1, 2}, {{2, 0, 7}, {0, 1, 5}});
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  ASSERT_EQ(g.degree(0), 2u);
  EXPECT_EQ(g.neighbors(0)[0].vertex, 1);
  EXPECT_EQ(g.neighbors(0)[1].vertex, 2);
  EXPECT_EQ(g.edge_label(0, 2), 7);
  EXPECT_EQ(g.edge_label(2, 0), 7);
  EXPECT_FALSE(g.edge_label(1, 2).has_value());
  EXPECT_TRUE(g.is_connected());
}

TEST(AttributedGraph, RejectsSelfLoop) {
  EXPECT_THROW(AttributedGraph({0, 0}, {{1, 1, 0}}), GraphError);
}

TEST(AttributedGraph, RejectsDuplicateEdgeInEitherOrder) {
  EXPECT_THROW(AttributedGraph({0, 0}, {{0, 1, 0}, {1, 0, 1}}), GraphError);
}

TEST(AttributedGraph, RejectsOutOfRangeEndpoint) {
  EXPECT_THROW(AttributedGraph({0, 0}, {{0, 2, 0}}), GraphError);
  EXPECT_THROW(AttributedGraph({0, 0}, {{-1, 1, 0}}), GraphError);
}

TEST(AttributedGraph, Connectivity) {
  EXPECT_TRUE(AttributedGraph({4}, {}).is_connected());
  EXPECT_FALSE(AttributedGraph({0, 0}, {}).is_connected());
  EXPECT_FALSE(AttributedGraph({0, 0, 0, 0}, {{0, 1, 0}, {2, 3, 0}}).is_connected());
}

TEST(LabeledCollection, PartitionCoversAllIndices) {
  const auto c = fixtures::toy_collection();
  const auto a = c.indices_of(GraphLabel::Anomalous);
  const auto n = c.indices_of(GraphLabel::Normal);
  EXPECT_EQ(a, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(n, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(c.count(GraphLabel::Anomalous) + c.count(GraphLabel::Normal), c.size());
}

TEST(LabeledCollection, SizeMismatchThrows) {
  EXPECT_THROW(LabeledCollection({AttributedGraph({0}, {})}, {}), ArgumentError);
}

TEST(LabeledCollection, SubsetKeepsLabels) {
  const auto c = fixtures::toy_collection();
  const std::vector<std::size_t> idx{3, 0};
  const auto s = c.subset(idx);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.graph(0), c.graph(3));
  EXPECT_EQ(s.label(0), GraphLabel::Normal);
  EXPECT_EQ(s.label(1), GraphLabel::Anomalous);
}

}  // namespace
}  // namespace pang
