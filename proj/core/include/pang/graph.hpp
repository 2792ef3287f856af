#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace pang {

using VertexId = std::int32_t;
using Label = std::int32_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Label label = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  VertexId vertex = 0;
  Label edge_label = 0;
};

/// Undirected simple graph with one categorical label per vertex and per
/// edge. Vertex ids are dense (0..n-1). Immutable once built; the
/// constructor validates the invariants and builds sorted adjacency lists.
class AttributedGraph {
 public:
  AttributedGraph() = default;

  /// Throws GraphError on self-loops, duplicate edges (in either
  /// orientation) or endpoints outside 0..n-1.
  AttributedGraph(std::vector<Label> vertex_labels, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertex_labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return vertex_labels_.empty(); }

  Label vertex_label(VertexId v) const { return vertex_labels_[static_cast<std::size_t>(v)]; }
  std::span<const Label> vertex_labels() const noexcept { return vertex_labels_; }

  /// Edges in insertion order.
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Neighbours of `v`, sorted by vertex id.
  std::span<const Neighbor> neighbors(VertexId v) const;
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  std::optional<Label> edge_label(VertexId u, VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const { return edge_label(u, v).has_value(); }

  bool is_connected() const;

  /// Same vertex labels and the same edge set (order-insensitive).
  friend bool operator==(const AttributedGraph& a, const AttributedGraph& b);

 private:
  std::vector<Label> vertex_labels_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;  // CSR row starts, size n+1
  std::vector<Neighbor> adjacency_;
};

enum class GraphLabel : std::uint8_t { Anomalous, Normal };

std::string_view to_string(GraphLabel label) noexcept;

/// Graphs with their A/N labels. Index sets of the two classes partition
/// 0..size()-1 by construction.
class LabeledCollection {
 public:
  LabeledCollection() = default;
  LabeledCollection(std::vector<AttributedGraph> graphs, std::vector<GraphLabel> labels);

  void add(AttributedGraph graph, GraphLabel label);

  std::size_t size() const noexcept { return graphs_.size(); }
  bool empty() const noexcept { return graphs_.empty(); }

  const AttributedGraph& graph(std::size_t i) const { return graphs_[i]; }
  GraphLabel label(std::size_t i) const { return labels_[i]; }
  std::span<const AttributedGraph> graphs() const noexcept { return graphs_; }
  std::span<const GraphLabel> labels() const noexcept { return labels_; }

  std::size_t count(GraphLabel label) const noexcept;
  std::vector<std::size_t> indices_of(GraphLabel label) const;

  /// Sub-collection in the order of `indices`.
  LabeledCollection subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<AttributedGraph> graphs_;
  std::vector<GraphLabel> labels_;
};

}  // namespace pang
