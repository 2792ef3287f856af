#include "pang/graph.hpp"

#include <algorithm>
#include <string>

#include "pang/error.hpp"

namespace pang {

AttributedGraph::AttributedGraph(std::vector<Label> vertex_labels, std::vector<Edge> edges)
    : vertex_labels_(std::move(vertex_labels)), edges_(std::move(edges)) {
  const auto n = static_cast<VertexId>(vertex_labels_.size());
  std::vector<std::size_t> degree(vertex_labels_.size(), 0);
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw GraphError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") references a vertex outside 0.." + std::to_string(n - 1));
    }
    if (e.u == e.v) {
      throw GraphError("self-loop on vertex " + std::to_string(e.u));
    }
    ++degree[static_cast<std::size_t>(e.u)];
    ++degree[static_cast<std::size_t>(e.v)];
  }

  offsets_.assign(vertex_labels_.size() + 1, 0);
  for (std::size_t i = 0; i < degree.size(); ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[static_cast<std::size_t>(e.u)]++] = {e.v, e.label};
    adjacency_[cursor[static_cast<std::size_t>(e.v)]++] = {e.u, e.label};
  }
  for (std::size_t i = 0; i < vertex_labels_.size(); ++i) {
    auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
    auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
    std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    auto dup = std::adjacent_find(first, last, [](const Neighbor& a, const Neighbor& b) {
      return a.vertex == b.vertex;
    });
    if (dup != last) {
      throw GraphError("duplicate edge between " + std::to_string(i) + " and " +
                       std::to_string(dup->vertex));
    }
  }
}

std::span<const Neighbor> AttributedGraph::neighbors(VertexId v) const {
  const auto i = static_cast<std::size_t>(v);
  return std::span<const Neighbor>(adjacency_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::optional<Label> AttributedGraph::edge_label(VertexId u, VertexId v) const {
  // Search the shorter list.
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                             [](const Neighbor& n, VertexId x) { return n.vertex < x; });
  if (it != nbrs.end() && it->vertex == v) return it->edge_label;
  return std::nullopt;
}

bool AttributedGraph::is_connected() const {
  if (vertex_labels_.empty()) return false;
  std::vector<char> seen(vertex_labels_.size(), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : neighbors(v)) {
      auto& s = seen[static_cast<std::size_t>(nb.vertex)];
      if (!s) {
        s = 1;
        ++reached;
        stack.push_back(nb.vertex);
      }
    }
  }
  return reached == vertex_labels_.size();
}

bool operator==(const AttributedGraph& a, const AttributedGraph& b) {
  if (a.vertex_labels_ != b.vertex_labels_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t v = 0; v < a.vertex_labels_.size(); ++v) {
    auto na = a.neighbors(static_cast<VertexId>(v));
    auto nb = b.neighbors(static_cast<VertexId>(v));
    if (!std::equal(na.begin(), na.end(), nb.begin(), nb.end(), [](const Neighbor& x, const Neighbor& y) {
          return x.vertex == y.vertex && x.edge_label == y.edge_label;
        })) {
      return false;
    }
  }
  return true;
}

std::string_view to_string(GraphLabel label) noexcept {
  return label == GraphLabel::Anomalous ? "A" : "N";
}

LabeledCollection::LabeledCollection(std::vector<AttributedGraph> graphs, std::vector<GraphLabel> labels)
    : graphs_(std::move(graphs)), labels_(std::move(labels)) {
  if (graphs_.size() != labels_.size()) {
    throw ArgumentError("collection has " + std::to_string(graphs_.size()) + " graphs but " +
                        std::to_string(labels_.size()) + " labels");
  }
}

void LabeledCollection::add(AttributedGraph graph, GraphLabel label) {
  graphs_.push_back(std::move(graph));
  labels_.push_back(label);
}

std::size_t LabeledCollection::count(GraphLabel label) const noexcept {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

std::vector<std::size_t> LabeledCollection::indices_of(GraphLabel label) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) out.push_back(i);
  }
  return out;
}

LabeledCollection LabeledCollection::subset(std::span<const std::size_t> indices) const {
  LabeledCollection out;
  for (std::size_t i : indices) out.add(graphs_.at(i), labels_.at(i));
  return out;
}

}  // namespace pang
