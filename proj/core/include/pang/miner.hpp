#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "pang/dfs_code.hpp"
#include "pang/graph.hpp"

namespace pang {

/// Minimum graph frequency, absolute or as a fraction of the collection.
class MinSupport {
 public:
  static MinSupport absolute(std::size_t count);
  static MinSupport relative(double fraction);
  /// "5" (absolute), "0.1" or "10%" (relative).
  static MinSupport parse(std::string_view text);

  /// Absolute threshold for a collection of `n` graphs (relative values are
  /// rounded up). Throws ArgumentError if the result is outside 1..n.
  std::size_t resolve(std::size_t n) const;

  bool is_relative() const noexcept { return relative_; }
  double value() const noexcept { return value_; }

 private:
  MinSupport(bool relative, double value) : relative_(relative), value_(value) {}

  bool relative_ = false;
  double value_ = 1;
};

/// Every label-preserving mapping of a DFS code into each graph of a
/// collection, grouped per graph. Mappings are stored flat, one VertexId per
/// discovery index.
class EmbeddingIndex {
 public:
  struct PerGraph {
    std::size_t graph = 0;
    std::vector<VertexId> flat;
  };

  EmbeddingIndex(std::span<const AttributedGraph> graphs, std::size_t width) : graphs_(graphs), width_(width) {}

  /// Enumerates every embedding of `code` by following its edges in order.
  static EmbeddingIndex build(const DfsCode& code, std::span<const AttributedGraph> graphs);

  std::span<const AttributedGraph> graphs() const noexcept { return graphs_; }
  std::size_t width() const noexcept { return width_; }
  const std::vector<PerGraph>& entries() const noexcept { return entries_; }
  std::size_t support() const noexcept { return entries_.size(); }
  std::size_t embedding_count() const noexcept;

  /// Appends one mapping for graph `graph`; graphs must arrive in
  /// non-decreasing order.
  void add(std::size_t graph, std::span<const VertexId> mapping);

 private:
  std::span<const AttributedGraph> graphs_;
  std::size_t width_;
  std::vector<PerGraph> entries_;
};

/// All one-edge rightmost extensions of `code` realized by at least one
/// embedding in `index`, in DFS lexicographic order, without duplicates.
std::vector<DfsCode> extensions(const DfsCode& code, const EmbeddingIndex& index);

struct MinerOptions {
  MinSupport minsup = MinSupport::absolute(1);
  std::size_t max_vertices = 10;
  std::size_t max_edges = 10;
  unsigned jobs = 1;  // 0 = hardware concurrency
};

struct MinedPattern {
  Pattern pattern;
  std::size_t gf = 0;    ///< graphs containing the pattern
  std::size_t gf_a = 0;  ///< ... among anomalous graphs
  std::size_t gf_n = 0;  ///< ... among normal graphs
};

/// Every connected pattern with GF >= minsup and at most max_vertices /
/// max_edges, single vertices included, sorted by canonical code. Output is
/// independent of `jobs`.
std::vector<MinedPattern> mine(const LabeledCollection& collection, const MinerOptions& options);

}  // namespace pang
