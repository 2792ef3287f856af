#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pang/dfs_code.hpp"
#include "pang/graph.hpp"
#include "pang/matcher.hpp"

namespace pang {

/// Graph and subgraph frequencies of one pattern, split by class.
struct PatternStats {
  std::uint64_t gf_a = 0;
  std::uint64_t gf_n = 0;
  std::uint64_t sf_a = 0;
  std::uint64_t sf_n = 0;

  std::uint64_t gf() const noexcept { return gf_a + gf_n; }
  std::uint64_t sf() const noexcept { return sf_a + sf_n; }
  friend bool operator==(const PatternStats&, const PatternStats&) = default;
};

enum class PatternFamily : std::uint8_t { General, Induced, Closed };
enum class FrequencyKind : std::uint8_t { GF, SF };

std::string_view to_string(PatternFamily family) noexcept;
/// Accepts "gen"/"general", "ind"/"induced", "clo"/"closed".
PatternFamily parse_family(std::string_view text);

/// GF and SF per class for every pattern, counting occurrences in `mode`.
/// With `with_sf` false only existence is tested and SF is left equal to GF.
std::vector<PatternStats> compute_stats(std::span<const Pattern> patterns, const LabeledCollection& collection,
                                        MatchMode mode, bool with_sf = true, unsigned jobs = 1);

/// Indices of the closed patterns of a complete frequent set: P is dropped
/// when some P' in the set with one more edge contains P and has the same GF.
/// `stats` must be general-mode statistics on the mined collection.
std::vector<std::size_t> filter_closed(std::span<const Pattern> patterns, std::span<const PatternStats> stats,
                                       unsigned jobs = 1);

/// Indices of the patterns with an induced occurrence in at least one graph.
std::vector<std::size_t> filter_induced(std::span<const Pattern> patterns, const LabeledCollection& collection,
                                        unsigned jobs = 1);

struct ScoreOptions {
  FrequencyKind kind = FrequencyKind::GF;
  /// Divide each class frequency by its class size before differencing.
  bool normalize_classes = false;
  std::size_t class_a = 0;
  std::size_t class_n = 0;
};

/// |F(P, G_A) - F(P, G_N)| with F = GF or SF.
double discrimination_score(const PatternStats& stats, const ScoreOptions& options);

/// Positions of the `s` best patterns: score descending, then GF descending,
/// then canonical code ascending. `s` larger than the set returns everything.
/// Throws ArgumentError if s == 0.
std::vector<std::size_t> select_top(std::span<const Pattern> patterns, std::span<const double> scores,
                                    std::span<const PatternStats> stats, std::size_t s);

}  // namespace pang
