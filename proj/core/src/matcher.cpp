#include "pang/matcher.hpp"

#include <algorithm>
#include <map>

namespace pang {

namespace {

struct Step {
  VertexId vertex = 0;
  Label label = 0;
  std::size_t degree = 0;
  int parent = -1;  // earlier position adjacent to this vertex, -1 if none
  Label parent_edge = 0;
  std::vector<std::pair<int, Label>> back_edges;  // other earlier adjacent positions
  std::size_t earlier_neighbors = 0;
};

std::vector<Step> plan(const AttributedGraph& p, const AttributedGraph& g) {
  std::map<Label, std::size_t> frequency;
  for (Label l : g.vertex_labels()) ++frequency[l];
  auto rarity = [&](VertexId v) {
    auto it = frequency.find(p.vertex_label(v));
    return it == frequency.end() ? std::size_t{0} : it->second;
  };

  const auto n = p.vertex_count();
  std::vector<int> position(n, -1);
  std::vector<std::size_t> placed_neighbors(n, 0);
  std::vector<Step> steps;
  steps.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    VertexId best = -1;
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      if (position[static_cast<std::size_t>(v)] != -1) continue;
      if (best == -1) {
        best = v;
        continue;
      }
      auto key = [&](VertexId x) {
        return std::tuple(placed_neighbors[static_cast<std::size_t>(x)], -static_cast<long long>(rarity(x)),
                          p.degree(x));
      };
      if (key(v) > key(best)) best = v;
    }
    position[static_cast<std::size_t>(best)] = static_cast<int>(k);
    Step step;
    step.vertex = best;
    step.label = p.vertex_label(best);
    step.degree = p.degree(best);
    for (const Neighbor& nb : p.neighbors(best)) {
      const int pos = position[static_cast<std::size_t>(nb.vertex)];
      if (pos == -1 || pos == static_cast<int>(k)) {
        ++placed_neighbors[static_cast<std::size_t>(nb.vertex)];
        continue;
      }
      ++step.earlier_neighbors;
      if (step.parent == -1) {
        step.parent = pos;
        step.parent_edge = nb.edge_label;
      } else {
        step.back_edges.emplace_back(pos, nb.edge_label);
      }
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

class Search {
 public:
  Search(const AttributedGraph& g, const std::vector<Step>& steps, MatchMode mode, bool stop_at_first)
      : g_(g), steps_(steps), mode_(mode), stop_(stop_at_first),
        map_(steps.size(), -1), used_(g.vertex_count(), 0) {}

  std::uint64_t run() {
    extend(0);
    return found_;
  }

 private:
  bool admissible(std::size_t k, VertexId c) const {
    const Step& s = steps_[k];
    if (used_[static_cast<std::size_t>(c)] || g_.vertex_label(c) != s.label || g_.degree(c) < s.degree) return false;
    for (auto [pos, label] : s.back_edges) {
      auto le = g_.edge_label(c, map_[static_cast<std::size_t>(pos)]);
      if (!le || *le != label) return false;
    }
    if (mode_ == MatchMode::Induced) {
      std::size_t mapped = 0;
      for (const Neighbor& nb : g_.neighbors(c)) mapped += used_[static_cast<std::size_t>(nb.vertex)] ? 1 : 0;
      if (mapped != s.earlier_neighbors) return false;
    }
    return true;
  }

  void place(std::size_t k, VertexId c) {
    map_[k] = c;
    used_[static_cast<std::size_t>(c)] = 1;
    extend(k + 1);
    used_[static_cast<std::size_t>(c)] = 0;
  }

  void extend(std::size_t k) {
    if (k == steps_.size()) {
      ++found_;
      return;
    }
    const Step& s = steps_[k];
    if (s.parent >= 0) {
      for (const Neighbor& nb : g_.neighbors(map_[static_cast<std::size_t>(s.parent)])) {
        if (nb.edge_label != s.parent_edge || !admissible(k, nb.vertex)) continue;
        place(k, nb.vertex);
        if (stop_ && found_) return;
      }
    } else {
      for (VertexId c = 0; c < static_cast<VertexId>(g_.vertex_count()); ++c) {
        if (!admissible(k, c)) continue;
        place(k, c);
        if (stop_ && found_) return;
      }
    }
  }

  const AttributedGraph& g_;
  const std::vector<Step>& steps_;
  MatchMode mode_;
  bool stop_;
  std::vector<VertexId> map_;
  std::vector<char> used_;
  std::uint64_t found_ = 0;
};

}  // namespace

PatternMatcher::PatternMatcher(const AttributedGraph& pattern) : pattern_(pattern) {
  std::map<Label, std::size_t> demand;
  for (Label l : pattern_.vertex_labels()) ++demand[l];
  label_demand_.assign(demand.begin(), demand.end());
}

std::uint64_t PatternMatcher::search(const AttributedGraph& g, MatchMode mode, bool stop_at_first) const {
  if (pattern_.empty()) return 1;
  if (pattern_.vertex_count() > g.vertex_count() || pattern_.edge_count() > g.edge_count()) return 0;
  if (label_demand_.size() > 1 || label_demand_.front().second > 1) {
    std::map<Label, std::size_t> supply;
    for (Label l : g.vertex_labels()) ++supply[l];
    for (auto [label, need] : label_demand_) {
      auto it = supply.find(label);
      if (it == supply.end() || it->second < need) return 0;
    }
  }
  const auto steps = plan(pattern_, g);
  return Search(g, steps, mode, stop_at_first).run();
}

bool PatternMatcher::exists(const AttributedGraph& g, MatchMode mode) const { return search(g, mode, true) > 0; }

std::uint64_t PatternMatcher::count(const AttributedGraph& g, MatchMode mode) const {
  return search(g, mode, false);
}

bool exists_general(const Pattern& p, const AttributedGraph& g) {
  return PatternMatcher(p).exists(g, MatchMode::General);
}

bool exists_induced(const Pattern& p, const AttributedGraph& g) {
  return PatternMatcher(p).exists(g, MatchMode::Induced);
}

std::uint64_t count_occurrences(const Pattern& p, const AttributedGraph& g, MatchMode mode) {
  return PatternMatcher(p).count(g, mode);
}

}  // namespace pang
