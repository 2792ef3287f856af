#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pang/dfs_code.hpp"
#include "pang/graph.hpp"
#include "pang/matcher.hpp"
#include "pang/pattern_select.hpp"

namespace pang {

enum class Representation : std::uint8_t {
  Binary,   ///< 1 if the pattern occurs, else 0
  Integer,  ///< number of occurrences (injective mappings)
};

std::string_view to_string(Representation mode) noexcept;
/// Accepts "bin"/"binary" and "occ"/"int"/"integer".
Representation parse_representation(std::string_view text);

/// |G| x s matrix of pattern indicators, row-major. Column j belongs to
/// pattern_ids[j].
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::vector<DfsCode> pattern_ids, Representation mode, PatternFamily family);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return pattern_ids_.size(); }
  Representation mode() const noexcept { return mode_; }
  PatternFamily family() const noexcept { return family_; }
  const std::vector<DfsCode>& pattern_ids() const noexcept { return pattern_ids_; }

  std::uint64_t at(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }
  std::span<const std::uint64_t> row(std::size_t r) const {
    return std::span<const std::uint64_t>(values_).subspan(r * cols(), cols());
  }
  void set_row(std::size_t r, std::span<const std::uint64_t> values);

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<DfsCode> pattern_ids_;
  Representation mode_ = Representation::Binary;
  PatternFamily family_ = PatternFamily::General;
  std::vector<std::uint64_t> values_;
};

/// Occurrence semantics used for a family. Induced columns use `induced_mode`
/// (induced matching unless configured otherwise); other families match
/// generally.
MatchMode match_mode_for(PatternFamily family, MatchMode induced_mode = MatchMode::Induced) noexcept;

/// Vector of length |ps| for one graph.
std::vector<std::uint64_t> vectorize(const AttributedGraph& g, std::span<const Pattern> ps, Representation mode,
                                     MatchMode match);

/// Row i = vectorize(collection graph i). Rows are computed in parallel.
FeatureMatrix build_matrix(const LabeledCollection& collection, std::span<const Pattern> ps, Representation mode,
                           PatternFamily family, MatchMode induced_mode = MatchMode::Induced, unsigned jobs = 1);

}  // namespace pang
