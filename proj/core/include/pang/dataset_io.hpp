#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pang/dfs_code.hpp"
#include "pang/features.hpp"
#include "pang/graph.hpp"
#include "pang/pattern_select.hpp"

namespace pang {

// Transaction format, one graph per block:
//   t # <graph-index> <label>     label 1 = anomalous, 0 = normal
//   v <vertex-id> <vertex-label>
//   e <u> <v> <edge-label>
// Vertex ids may be sparse within a graph; they are re-indexed in order of
// appearance. Blank lines and lines starting with '%' are ignored; "t # -1"
// ends the input.

LabeledCollection parse_transactions(std::istream& in, const std::string& source = "<stream>");
LabeledCollection read_transactions(const std::filesystem::path& path);
void write_transactions(std::ostream& out, const LabeledCollection& collection);
void write_transactions(const std::filesystem::path& path, const LabeledCollection& collection);

struct BenchmarkOptions {
  /// Dataset class value mapped to the anomalous class.
  long positive_label = 1;
};

/// Multi-file benchmark bundle <dir>/<DS>_A.txt, _graph_indicator.txt,
/// _graph_labels.txt and optional _node_labels.txt / _edge_labels.txt.
/// Adjacency lines list each undirected edge in both directions; the first
/// occurrence of an unordered pair is kept. Missing label files map every
/// vertex/edge to label 0.
LabeledCollection read_benchmark(const std::filesystem::path& dir, const BenchmarkOptions& options = {});

/// Reads a bundle directory or a transaction file, whichever `path` is.
LabeledCollection read_collection(const std::filesystem::path& path, const BenchmarkOptions& options = {});

/// One row of a pattern-set file.
struct PatternRecord {
  DfsCode code;
  PatternStats stats;          ///< general-mode statistics
  PatternStats induced_stats;  ///< induced-mode statistics
  bool closed = false;
  bool induced = false;
  double score = 0.0;

  friend bool operator==(const PatternRecord&, const PatternRecord&) = default;
};

struct PatternSet {
  std::size_t class_a = 0;
  std::size_t class_n = 0;
  std::vector<PatternRecord> records;

  friend bool operator==(const PatternSet&, const PatternSet&) = default;
};

/// Tab-separated file with a header; rows sorted by score descending, then
/// GF descending, then canonical code ascending. Scores are written in
/// shortest round-trip form.
void write_patterns(std::ostream& out, const PatternSet& set);
void write_patterns(const std::filesystem::path& path, const PatternSet& set);
PatternSet parse_patterns(std::istream& in, const std::string& source = "<stream>");
PatternSet read_patterns(const std::filesystem::path& path);

/// Comma-separated matrix: header "p1,...,ps,label", one row per graph, last
/// column A or N.
void write_matrix(std::ostream& out, const FeatureMatrix& h, std::span<const GraphLabel> labels);
void write_matrix(const std::filesystem::path& path, const FeatureMatrix& h, std::span<const GraphLabel> labels);

struct MatrixFile {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> values;  ///< row-major
  std::vector<GraphLabel> labels;
};
MatrixFile parse_matrix(std::istream& in, const std::string& source = "<stream>");

}  // namespace pang
