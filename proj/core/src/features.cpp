#include "pang/features.hpp"

#include <string>

#include "pang/error.hpp"
#include "pang/parallel.hpp"

namespace pang {

std::string_view to_string(Representation mode) noexcept {
  return mode == Representation::Binary ? "bin" : "occ";
}

Representation parse_representation(std::string_view text) {
  if (text == "bin" || text == "binary") return Representation::Binary;
  if (text == "occ" || text == "int" || text == "integer") return Representation::Integer;
  throw ArgumentError("unknown representation '" + std::string(text) + "'");
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::vector<DfsCode> pattern_ids, Representation mode,
                             PatternFamily family)
    : rows_(rows), pattern_ids_(std::move(pattern_ids)), mode_(mode), family_(family),
      values_(rows * pattern_ids_.size(), 0) {}

void FeatureMatrix::set_row(std::size_t r, std::span<const std::uint64_t> values) {
  if (values.size() != cols()) throw ArgumentError("row length does not match the number of patterns");
  if (mode_ == Representation::Binary) {
    for (auto v : values) {
      if (v > 1) throw ArgumentError("binary feature matrix entries must be 0 or 1");
    }
  }
  std::copy(values.begin(), values.end(), values_.begin() + static_cast<std::ptrdiff_t>(r * cols()));
}

MatchMode match_mode_for(PatternFamily family, MatchMode induced_mode) noexcept {
  return family == PatternFamily::Induced ? induced_mode : MatchMode::General;
}

std::vector<std::uint64_t> vectorize(const AttributedGraph& g, std::span<const Pattern> ps, Representation mode,
                                     MatchMode match) {
  std::vector<std::uint64_t> out(ps.size(), 0);
  for (std::size_t j = 0; j < ps.size(); ++j) {
    const PatternMatcher matcher(ps[j]);
    out[j] = mode == Representation::Binary ? (matcher.exists(g, match) ? 1 : 0) : matcher.count(g, match);
  }
  return out;
}

FeatureMatrix build_matrix(const LabeledCollection& collection, std::span<const Pattern> ps, Representation mode,
                           PatternFamily family, MatchMode induced_mode, unsigned jobs) {
  std::vector<DfsCode> ids;
  ids.reserve(ps.size());
  for (const Pattern& p : ps) ids.push_back(p.code());
  FeatureMatrix h(collection.size(), std::move(ids), mode, family);

  std::vector<PatternMatcher> matchers;
  matchers.reserve(ps.size());
  for (const Pattern& p : ps) matchers.emplace_back(p);
  const MatchMode match = match_mode_for(family, induced_mode);

  parallel_for(collection.size(), jobs, [&](std::size_t i) {
    const AttributedGraph& g = collection.graph(i);
    std::vector<std::uint64_t> row(ps.size(), 0);
    for (std::size_t j = 0; j < ps.size(); ++j) {
      row[j] = mode == Representation::Binary ? (matchers[j].exists(g, match) ? 1 : 0) : matchers[j].count(g, match);
    }
    h.set_row(i, row);
  });
  return h;
}

}  // namespace pang
