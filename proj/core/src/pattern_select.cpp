#include "pang/pattern_select.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "pang/error.hpp"
#include "pang/parallel.hpp"

namespace pang {

std::string_view to_string(PatternFamily family) noexcept {
  switch (family) {
    case PatternFamily::General: return "gen";
    case PatternFamily::Induced: return "ind";
    case PatternFamily::Closed: return "clo";
  }
  return "gen";
}

PatternFamily parse_family(std::string_view text) {
  if (text == "gen" || text == "general") return PatternFamily::General;
  if (text == "ind" || text == "induced") return PatternFamily::Induced;
  if (text == "clo" || text == "closed") return PatternFamily::Closed;
  throw ArgumentError("unknown pattern family '" + std::string(text) + "'");
}

std::vector<PatternStats> compute_stats(std::span<const Pattern> patterns, const LabeledCollection& collection,
                                        MatchMode mode, bool with_sf, unsigned jobs) {
  std::vector<PatternStats> stats(patterns.size());
  parallel_for(patterns.size(), jobs, [&](std::size_t i) {
    const PatternMatcher matcher(patterns[i]);
    PatternStats& st = stats[i];
    for (std::size_t g = 0; g < collection.size(); ++g) {
      const bool anomalous = collection.label(g) == GraphLabel::Anomalous;
      const std::uint64_t n = with_sf ? matcher.count(collection.graph(g), mode)
                                      : (matcher.exists(collection.graph(g), mode) ? 1 : 0);
      if (n == 0) continue;
      (anomalous ? st.gf_a : st.gf_n) += 1;
      (anomalous ? st.sf_a : st.sf_n) += n;
    }
  });
  return stats;
}

std::vector<std::size_t> filter_closed(std::span<const Pattern> patterns, std::span<const PatternStats> stats,
                                       unsigned jobs) {
  if (patterns.size() != stats.size()) throw ArgumentError("filter_closed: patterns and stats differ in length");
  // Candidate supergraphs grouped by (edge count, GF).
  std::map<std::pair<std::size_t, std::uint64_t>, std::vector<std::size_t>> by_level;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    by_level[{patterns[i].edge_count(), stats[i].gf()}].push_back(i);
  }
  std::vector<char> closed(patterns.size(), 1);
  parallel_for(patterns.size(), jobs, [&](std::size_t i) {
    auto it = by_level.find({patterns[i].edge_count() + 1, stats[i].gf()});
    if (it == by_level.end()) return;
    const PatternMatcher matcher(patterns[i]);
    for (std::size_t j : it->second) {
      if (matcher.exists(patterns[j].graph(), MatchMode::General)) {
        closed[i] = 0;
        return;
      }
    }
  });
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (closed[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> filter_induced(std::span<const Pattern> patterns, const LabeledCollection& collection,
                                        unsigned jobs) {
  std::vector<char> keep(patterns.size(), 0);
  parallel_for(patterns.size(), jobs, [&](std::size_t i) {
    const PatternMatcher matcher(patterns[i]);
    for (const AttributedGraph& g : collection.graphs()) {
      if (matcher.exists(g, MatchMode::Induced)) {
        keep[i] = 1;
        return;
      }
    }
  });
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (keep[i]) out.push_back(i);
  }
  return out;
}

double discrimination_score(const PatternStats& stats, const ScoreOptions& options) {
  const bool gf = options.kind == FrequencyKind::GF;
  double a = static_cast<double>(gf ? stats.gf_a : stats.sf_a);
  double n = static_cast<double>(gf ? stats.gf_n : stats.sf_n);
  if (options.normalize_classes) {
    if (options.class_a == 0 || options.class_n == 0) {
      throw ArgumentError("class normalization needs both class sizes");
    }
    a /= static_cast<double>(options.class_a);
    n /= static_cast<double>(options.class_n);
  }
  return std::fabs(a - n);
}

std::vector<std::size_t> select_top(std::span<const Pattern> patterns, std::span<const double> scores,
                                    std::span<const PatternStats> stats, std::size_t s) {
  if (s == 0) throw ArgumentError("the number of selected patterns must be >= 1");
  if (patterns.size() != scores.size() || patterns.size() != stats.size()) {
    throw ArgumentError("select_top: patterns, scores and stats differ in length");
  }
  std::vector<std::size_t> order(patterns.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (stats[a].gf() != stats[b].gf()) return stats[a].gf() > stats[b].gf();
    return patterns[a].code() < patterns[b].code();
  });
  if (s < order.size()) order.resize(s);
  return order;
}

}  // namespace pang
