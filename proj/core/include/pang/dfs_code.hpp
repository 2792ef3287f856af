#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pang/graph.hpp"

namespace pang {

/// One tuple (i, j, l_i, l_e, l_j) of a DFS code. `from`/`to` are discovery
/// indices; forward edges have from < to, backward edges from > to.
struct DfsEdge {
  std::int32_t from = 0;
  std::int32_t to = 0;
  Label from_label = 0;
  Label edge_label = 0;
  Label to_label = 0;

  bool is_forward() const noexcept { return from < to; }
  friend bool operator==(const DfsEdge&, const DfsEdge&) = default;
};

/// gSpan's DFS lexicographic order on edge tuples: structural order on the
/// (from, to) pairs first, then the label triple.
bool dfs_edge_less(const DfsEdge& a, const DfsEdge& b) noexcept;

/// Edge sequence built by rightmost extension. A code with no edges is the
/// single-vertex code and carries its vertex label in `root_label()`.
class DfsCode {
 public:
  DfsCode() = default;
  explicit DfsCode(std::vector<DfsEdge> edges);
  static DfsCode single_vertex(Label label);

  std::span<const DfsEdge> edges() const noexcept { return edges_; }
  const DfsEdge& operator[](std::size_t i) const { return edges_[i]; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t vertex_count() const noexcept;
  bool empty() const noexcept { return edges_.empty() && !has_root_; }
  Label root_label() const;

  void push_back(const DfsEdge& e);
  void pop_back();

  /// Discovery indices on the rightmost path, root first, rightmost vertex last.
  std::vector<std::int32_t> rightmost_path() const;

  /// Vertex label per discovery index.
  std::vector<Label> vertex_labels() const;

  /// Throws GraphError unless the sequence is a structurally valid DFS code:
  /// starts at (0,1), each forward edge grows from the rightmost path to a new
  /// index max+1, each backward edge leaves the rightmost vertex, labels agree
  /// per index and no edge repeats.
  void validate() const;

  /// The graph this code describes, vertex ids = discovery indices.
  AttributedGraph to_graph() const;

  std::string to_string() const;
  /// Inverse of to_string(); throws ArgumentError on malformed text.
  static DfsCode parse(std::string_view text);

  friend bool operator==(const DfsCode& a, const DfsCode& b) noexcept;
  /// Total order: single-vertex codes first (by label), then edge sequences
  /// compared element-wise with dfs_edge_less, a proper prefix first.
  friend std::strong_ordering operator<=>(const DfsCode& a, const DfsCode& b) noexcept;

 private:
  std::vector<DfsEdge> edges_;
  Label root_label_ = 0;
  bool has_root_ = false;
};

/// Minimum DFS code over every DFS traversal of `g`. Equal for two graphs
/// iff they are isomorphic (vertex and edge labels preserved).
/// Throws GraphError if `g` is empty or disconnected.
DfsCode canonical_code(const AttributedGraph& g);

/// True iff `code` equals canonical_code(code.to_graph()). Stops at the first
/// position where a smaller tuple exists.
bool is_minimal(const DfsCode& code);

/// Connected attributed graph held in canonical form.
class Pattern {
 public:
  /// Canonicalizes `g`; throws GraphError if `g` is empty or disconnected.
  static Pattern from_graph(const AttributedGraph& g);
  /// Throws GraphError if `code` is invalid or not minimal.
  static Pattern from_code(DfsCode code);
  /// For callers that already established minimality (the miner).
  static Pattern from_minimal_code(DfsCode code);

  const DfsCode& code() const noexcept { return code_; }
  const AttributedGraph& graph() const noexcept { return graph_; }
  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  std::size_t edge_count() const noexcept { return graph_.edge_count(); }

  friend bool operator==(const Pattern& a, const Pattern& b) noexcept { return a.code_ == b.code_; }
  friend std::strong_ordering operator<=>(const Pattern& a, const Pattern& b) noexcept {
    return a.code_ <=> b.code_;
  }

 private:
  Pattern(DfsCode code, AttributedGraph graph) : code_(std::move(code)), graph_(std::move(graph)) {}

  DfsCode code_;
  AttributedGraph graph_;
};

bool is_same_pattern(const Pattern& a, const Pattern& b) noexcept;

}  // namespace pang

template <>
struct std::hash<pang::DfsCode> {
  std::size_t operator()(const pang::DfsCode& code) const noexcept;
};
