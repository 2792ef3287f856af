#include "pang/miner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "pang/error.hpp"
#include "pang/parallel.hpp"

namespace pang {

MinSupport MinSupport::absolute(std::size_t count) {
  if (count < 1) throw ArgumentError("absolute minimum support must be >= 1");
  return MinSupport(false, static_cast<double>(count));
}

MinSupport MinSupport::relative(double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ArgumentError("relative minimum support must lie in (0, 1]");
  return MinSupport(true, fraction);
}

MinSupport MinSupport::parse(std::string_view text) {
  if (text.empty()) throw ArgumentError("empty minimum support");
  const bool percent = text.back() == '%';
  if (percent) text.remove_suffix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ArgumentError("malformed minimum support '" + std::string(text) + "'");
  }
  if (percent) return relative(value / 100.0);
  if (text.find('.') != std::string_view::npos) return relative(value);
  if (value < 1 || value != std::floor(value)) throw ArgumentError("absolute minimum support must be an integer >= 1");
  return absolute(static_cast<std::size_t>(value));
}

std::size_t MinSupport::resolve(std::size_t n) const {
  const double raw = relative_ ? std::ceil(value_ * static_cast<double>(n) - 1e-9) : value_;
  const auto resolved = static_cast<std::size_t>(std::max(1.0, raw));
  if (resolved > n) {
    throw ArgumentError("minimum support " + std::to_string(resolved) + " exceeds the collection size " +
                        std::to_string(n));
  }
  return resolved;
}

std::size_t EmbeddingIndex::embedding_count() const noexcept {
  std::size_t total = 0;
  for (const auto& e : entries_) total += e.flat.size() / width_;
  return total;
}

void EmbeddingIndex::add(std::size_t graph, std::span<const VertexId> mapping) {
  if (entries_.empty() || entries_.back().graph != graph) entries_.push_back({graph, {}});
  auto& flat = entries_.back().flat;
  flat.insert(flat.end(), mapping.begin(), mapping.end());
}

namespace {

void enumerate(const DfsCode& code, const AttributedGraph& g, std::size_t graph, std::vector<VertexId>& map,
               std::size_t t, EmbeddingIndex& out) {
  if (t == code.edge_count()) {
    out.add(graph, map);
    return;
  }
  const DfsEdge& e = code[t];
  const VertexId from = map[static_cast<std::size_t>(e.from)];
  if (e.is_forward()) {
    for (const Neighbor& nb : g.neighbors(from)) {
      if (nb.edge_label != e.edge_label || g.vertex_label(nb.vertex) != e.to_label) continue;
      if (std::find(map.begin(), map.end(), nb.vertex) != map.end()) continue;
      map.push_back(nb.vertex);
      enumerate(code, g, graph, map, t + 1, out);
      map.pop_back();
    }
  } else {
    auto le = g.edge_label(from, map[static_cast<std::size_t>(e.to)]);
    if (le && *le == e.edge_label) enumerate(code, g, graph, map, t + 1, out);
  }
}

struct EdgeOrder {
  bool operator()(const DfsEdge& a, const DfsEdge& b) const noexcept { return dfs_edge_less(a, b); }
};

using Children = std::map<DfsEdge, EmbeddingIndex, EdgeOrder>;

struct GrowLimits {
  bool allow_forward = true;
};

/// One-edge rightmost extensions of every embedding in `index`.
Children grow(const DfsCode& code, const EmbeddingIndex& index, GrowLimits limits) {
  Children children;
  const auto graphs = index.graphs();
  const std::size_t width = index.width();
  const auto path = code.rightmost_path();
  const std::int32_t rm = path.back();
  const auto next = static_cast<std::int32_t>(width);
  const auto labels = code.vertex_labels();

  std::vector<char> linked(width * width, 0);
  for (const DfsEdge& e : code.edges()) {
    linked[static_cast<std::size_t>(e.from) * width + static_cast<std::size_t>(e.to)] = 1;
    linked[static_cast<std::size_t>(e.to) * width + static_cast<std::size_t>(e.from)] = 1;
  }

  // The first tuple of a minimal code is the smallest oriented edge of the
  // pattern, so no edge may orient below it.
  const bool have_first = code.edge_count() > 0;
  const auto first = have_first ? std::tuple(code[0].from_label, code[0].edge_label, code[0].to_label)
                                 : std::tuple(Label{}, Label{}, Label{});
  auto below_first = [&](Label a, Label le, Label b) {
    return have_first && std::tuple(std::min(a, b), le, std::max(a, b)) < first;
  };

  auto child = [&](const DfsEdge& e) -> EmbeddingIndex& {
    auto it = children.find(e);
    if (it == children.end()) {
      const std::size_t w = e.is_forward() ? width + 1 : width;
      it = children.emplace(e, EmbeddingIndex(graphs, w)).first;
    }
    return it->second;
  };

  std::vector<VertexId> grown(width + 1);
  for (const auto& entry : index.entries()) {
    const AttributedGraph& g = graphs[entry.graph];
    for (std::size_t off = 0; off < entry.flat.size(); off += width) {
      std::span<const VertexId> map(entry.flat.data() + off, width);
      const VertexId grm = map[static_cast<std::size_t>(rm)];
      for (std::size_t p = 0; p + 1 < path.size(); ++p) {
        const std::int32_t j = path[p];
        if (linked[static_cast<std::size_t>(rm) * width + static_cast<std::size_t>(j)]) continue;
        auto le = g.edge_label(grm, map[static_cast<std::size_t>(j)]);
        if (!le) continue;
        const Label lr = labels[static_cast<std::size_t>(rm)];
        const Label lj = labels[static_cast<std::size_t>(j)];
        if (below_first(lr, *le, lj)) continue;
        child({rm, j, lr, *le, lj}).add(entry.graph, map);
      }
      if (!limits.allow_forward) continue;
      std::copy(map.begin(), map.end(), grown.begin());
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        const std::int32_t i = *it;
        const Label li = labels[static_cast<std::size_t>(i)];
        for (const Neighbor& nb : g.neighbors(map[static_cast<std::size_t>(i)])) {
          if (std::find(map.begin(), map.end(), nb.vertex) != map.end()) continue;
          const Label lw = g.vertex_label(nb.vertex);
          if (below_first(li, nb.edge_label, lw)) continue;
          grown[width] = nb.vertex;
          child({i, next, li, nb.edge_label, lw}).add(entry.graph, grown);
        }
      }
    }
  }
  return children;
}

struct Run {
  const LabeledCollection& collection;
  std::size_t minsup;
  std::size_t max_vertices;
  std::size_t max_edges;
  std::vector<MinedPattern> found;

  void record(const DfsCode& code, const EmbeddingIndex& index) {
    MinedPattern mp{Pattern::from_minimal_code(code), index.support(), 0, 0};
    for (const auto& e : index.entries()) {
      (collection.label(e.graph) == GraphLabel::Anomalous ? mp.gf_a : mp.gf_n) += 1;
    }
    found.push_back(std::move(mp));
  }

  void expand(DfsCode& code, const EmbeddingIndex& index) {
    if (code.edge_count() >= max_edges) return;
    const bool allow_forward = code.vertex_count() < max_vertices;
    Children children = grow(code, index, {allow_forward});
    for (auto& [edge, child] : children) {
      if (child.support() < minsup) continue;
      code.push_back(edge);
      if (is_minimal(code)) {
        record(code, child);
        expand(code, child);
      }
      code.pop_back();
    }
  }
};

}  // namespace

EmbeddingIndex EmbeddingIndex::build(const DfsCode& code, std::span<const AttributedGraph> graphs) {
  EmbeddingIndex index(graphs, code.vertex_count());
  const Label root = code.root_label();
  std::vector<VertexId> map;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const AttributedGraph& g = graphs[gi];
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
      if (g.vertex_label(v) != root) continue;
      map.assign(1, v);
      enumerate(code, g, gi, map, 0, index);
    }
  }
  return index;
}

std::vector<DfsCode> extensions(const DfsCode& code, const EmbeddingIndex& index) {
  std::vector<DfsCode> out;
  for (const auto& [edge, child] : grow(code, index, {})) {
    DfsCode ext = code;
    ext.push_back(edge);
    out.push_back(std::move(ext));
  }
  return out;
}

std::vector<MinedPattern> mine(const LabeledCollection& collection, const MinerOptions& options) {
  if (collection.empty()) throw ArgumentError("cannot mine an empty collection");
  if (options.max_vertices < 1 || options.max_edges < 1) throw ArgumentError("size caps must be >= 1");
  const std::size_t minsup = options.minsup.resolve(collection.size());
  const auto graphs = collection.graphs();

  Run top{collection, minsup, options.max_vertices, options.max_edges, {}};

  // Single vertices.
  std::map<Label, std::vector<std::size_t>> vertex_support;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    for (Label l : graphs[gi].vertex_labels()) {
      auto& s = vertex_support[l];
      if (s.empty() || s.back() != gi) s.push_back(gi);
    }
  }
  for (const auto& [label, support] : vertex_support) {
    if (support.size() < minsup) continue;
    const DfsCode code = DfsCode::single_vertex(label);
    top.record(code, EmbeddingIndex::build(code, graphs));
  }

  // Frequent single-edge seeds, oriented so the smaller vertex label comes first.
  std::vector<std::pair<DfsEdge, EmbeddingIndex>> seeds;
  if (options.max_vertices >= 2) {
    std::map<DfsEdge, EmbeddingIndex, EdgeOrder> by_edge;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
      const AttributedGraph& g = graphs[gi];
      for (const Edge& e : g.edges()) {
        for (auto [u, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
          const Label lu = g.vertex_label(u);
          const Label lv = g.vertex_label(v);
          if (lu > lv) continue;
          DfsEdge seed{0, 1, lu, e.label, lv};
          auto it = by_edge.try_emplace(seed, graphs, 2).first;
          const VertexId pair[2] = {u, v};
          it->second.add(gi, pair);
        }
      }
    }
    for (auto& [edge, index] : by_edge) {
      if (index.support() >= minsup) seeds.emplace_back(edge, std::move(index));
    }
  }

  std::vector<std::vector<MinedPattern>> branch_results(seeds.size());
  parallel_for(seeds.size(), options.jobs, [&](std::size_t s) {
    Run run{collection, minsup, options.max_vertices, options.max_edges, {}};
    DfsCode code({seeds[s].first});
    run.record(code, seeds[s].second);
    run.expand(code, seeds[s].second);
    branch_results[s] = std::move(run.found);
  });

  std::vector<MinedPattern> result = std::move(top.found);
  for (auto& branch : branch_results) {
    std::move(branch.begin(), branch.end(), std::back_inserter(result));
  }
  std::sort(result.begin(), result.end(),
            [](const MinedPattern& a, const MinedPattern& b) { return a.pattern.code() < b.pattern.code(); });
  return result;
}

}  // namespace pang
