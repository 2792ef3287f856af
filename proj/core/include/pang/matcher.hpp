#pragma once

#include <cstdint>
#include <vector>

#include "pang/dfs_code.hpp"
#include "pang/graph.hpp"

namespace pang {

enum class MatchMode : std::uint8_t {
  General,  ///< monomorphisms: every pattern edge maps to a graph edge
  Induced,  ///< additionally, no graph edge between image vertices of non-adjacent pattern vertices
};

/// Backtracking matcher for one pattern graph against many targets.
///
/// Occurrences are counted as distinct injective label-preserving vertex
/// mappings, so a pattern with k automorphisms contributes k per image.
/// The search order is recomputed per target (rarest label in the target
/// first, then the vertex with most already-placed neighbours) and candidates
/// are pruned by degree.
class PatternMatcher {
 public:
  explicit PatternMatcher(const AttributedGraph& pattern);
  explicit PatternMatcher(const Pattern& pattern) : PatternMatcher(pattern.graph()) {}

  bool exists(const AttributedGraph& g, MatchMode mode) const;
  std::uint64_t count(const AttributedGraph& g, MatchMode mode) const;

 private:
  std::uint64_t search(const AttributedGraph& g, MatchMode mode, bool stop_at_first) const;

  AttributedGraph pattern_;
  std::vector<std::pair<Label, std::size_t>> label_demand_;  // sorted by label
};

bool exists_general(const Pattern& p, const AttributedGraph& g);
bool exists_induced(const Pattern& p, const AttributedGraph& g);
std::uint64_t count_occurrences(const Pattern& p, const AttributedGraph& g, MatchMode mode);

}  // namespace pang
