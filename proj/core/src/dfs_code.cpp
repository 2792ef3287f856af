#include "pang/dfs_code.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <tuple>

#include "pang/error.hpp"

namespace pang {

bool dfs_edge_less(const DfsEdge& a, const DfsEdge& b) noexcept {
  const bool af = a.is_forward();
  const bool bf = b.is_forward();
  if (a.from != b.from || a.to != b.to) {
    if (af && bf) return a.to < b.to || (a.to == b.to && a.from > b.from);
    if (!af && !bf) return a.from < b.from || (a.from == b.from && a.to < b.to);
    if (!af && bf) return a.from < b.to;
    return a.to <= b.from;  // a forward, b backward
  }
  return std::tie(a.from_label, a.edge_label, a.to_label) <
         std::tie(b.from_label, b.edge_label, b.to_label);
}

DfsCode::DfsCode(std::vector<DfsEdge> edges) : edges_(std::move(edges)) {}

DfsCode DfsCode::single_vertex(Label label) {
  DfsCode code;
  code.root_label_ = label;
  code.has_root_ = true;
  return code;
}

std::size_t DfsCode::vertex_count() const noexcept {
  if (edges_.empty()) return has_root_ ? 1 : 0;
  std::int32_t max_index = 0;
  for (const DfsEdge& e : edges_) max_index = std::max({max_index, e.from, e.to});
  return static_cast<std::size_t>(max_index) + 1;
}

Label DfsCode::root_label() const {
  if (!edges_.empty()) return edges_.front().from_label;
  if (!has_root_) throw GraphError("empty DFS code has no root");
  return root_label_;
}

void DfsCode::push_back(const DfsEdge& e) { edges_.push_back(e); }

void DfsCode::pop_back() { edges_.pop_back(); }

std::vector<std::int32_t> DfsCode::rightmost_path() const {
  if (edges_.empty()) return has_root_ ? std::vector<std::int32_t>{0} : std::vector<std::int32_t>{};
  const auto n = vertex_count();
  std::vector<std::int32_t> parent(n, -1);
  for (const DfsEdge& e : edges_) {
    if (e.is_forward()) parent[static_cast<std::size_t>(e.to)] = e.from;
  }
  std::vector<std::int32_t> path;
  for (auto v = static_cast<std::int32_t>(n - 1); v != -1; v = parent[static_cast<std::size_t>(v)]) {
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Label> DfsCode::vertex_labels() const {
  if (edges_.empty()) return has_root_ ? std::vector<Label>{root_label_} : std::vector<Label>{};
  std::vector<Label> labels(vertex_count(), 0);
  for (const DfsEdge& e : edges_) {
    labels[static_cast<std::size_t>(e.from)] = e.from_label;
    labels[static_cast<std::size_t>(e.to)] = e.to_label;
  }
  return labels;
}

void DfsCode::validate() const {
  if (edges_.empty()) {
    if (!has_root_) throw GraphError("empty DFS code");
    return;
  }
  if (edges_.front().from != 0 || edges_.front().to != 1) {
    throw GraphError("DFS code must start with edge (0,1)");
  }
  std::vector<Label> labels{edges_.front().from_label};
  std::vector<std::int32_t> path{0};  // current rightmost path
  std::vector<std::pair<std::int32_t, std::int32_t>> seen;
  for (std::size_t t = 0; t < edges_.size(); ++t) {
    const DfsEdge& e = edges_[t];
    const auto next = static_cast<std::int32_t>(labels.size());
    const std::int32_t rm = path.back();
    auto on_path = std::find(path.begin(), path.end(), e.from);
    if (e.is_forward()) {
      if (e.to != next) throw GraphError("forward edge " + std::to_string(t) + " must introduce index " + std::to_string(next));
      if (on_path == path.end()) throw GraphError("forward edge " + std::to_string(t) + " leaves the rightmost path");
      if (labels[static_cast<std::size_t>(e.from)] != e.from_label) throw GraphError("inconsistent vertex label in edge " + std::to_string(t));
      labels.push_back(e.to_label);
      path.erase(on_path + 1, path.end());
      path.push_back(e.to);
    } else {
      if (e.from != rm) throw GraphError("backward edge " + std::to_string(t) + " must leave the rightmost vertex");
      if (e.to < 0 || std::find(path.begin(), path.end(), e.to) == path.end() || e.to == e.from) {
        throw GraphError("backward edge " + std::to_string(t) + " must end on the rightmost path");
      }
      if (labels[static_cast<std::size_t>(e.from)] != e.from_label || labels[static_cast<std::size_t>(e.to)] != e.to_label) {
        throw GraphError("inconsistent vertex label in edge " + std::to_string(t));
      }
    }
    auto key = std::minmax(e.from, e.to);
    if (std::find(seen.begin(), seen.end(), std::pair{key.first, key.second}) != seen.end()) {
      throw GraphError("edge " + std::to_string(t) + " repeats an earlier edge");
    }
    seen.emplace_back(key.first, key.second);
  }
}

AttributedGraph DfsCode::to_graph() const {
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const DfsEdge& e : edges_) edges.push_back({e.from, e.to, e.edge_label});
  return AttributedGraph(vertex_labels(), std::move(edges));
}

std::string DfsCode::to_string() const {
  if (edges_.empty()) return has_root_ ? "v," + std::to_string(root_label_) : std::string{};
  std::string out;
  for (const DfsEdge& e : edges_) {
    if (!out.empty()) out += ';';
    out += std::to_string(e.from) + ',' + std::to_string(e.to) + ',' + std::to_string(e.from_label) + ',' +
           std::to_string(e.edge_label) + ',' + std::to_string(e.to_label);
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::int32_t parse_int(std::string_view field, std::string_view whole) {
  std::int32_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ArgumentError("malformed DFS code '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

DfsCode DfsCode::parse(std::string_view text) {
  if (text.starts_with("v,")) return single_vertex(parse_int(text.substr(2), text));
  std::vector<DfsEdge> edges;
  for (std::string_view item : split(text, ';')) {
    auto fields = split(item, ',');
    if (fields.size() != 5) throw ArgumentError("malformed DFS code '" + std::string(text) + "'");
    edges.push_back({parse_int(fields[0], text), parse_int(fields[1], text), parse_int(fields[2], text),
                     parse_int(fields[3], text), parse_int(fields[4], text)});
  }
  DfsCode code(std::move(edges));
  try {
    code.validate();
  } catch (const GraphError& e) {
    throw ArgumentError("invalid DFS code '" + std::string(text) + "': " + e.what());
  }
  return code;
}

bool operator==(const DfsCode& a, const DfsCode& b) noexcept {
  if (a.edges_.empty() || b.edges_.empty()) {
    return a.edges_.empty() && b.edges_.empty() && a.has_root_ == b.has_root_ &&
           (!a.has_root_ || a.root_label_ == b.root_label_);
  }
  return a.edges_ == b.edges_;
}

std::strong_ordering operator<=>(const DfsCode& a, const DfsCode& b) noexcept {
  const bool ae = a.edges_.empty();
  const bool be = b.edges_.empty();
  if (ae || be) {
    if (ae && be) {
      if (a.has_root_ != b.has_root_) return a.has_root_ ? std::strong_ordering::greater : std::strong_ordering::less;
      return a.has_root_ ? a.root_label_ <=> b.root_label_ : std::strong_ordering::equal;
    }
    return ae ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const std::size_t n = std::min(a.edges_.size(), b.edges_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (dfs_edge_less(a.edges_[i], b.edges_[i])) return std::strong_ordering::less;
    if (dfs_edge_less(b.edges_[i], a.edges_[i])) return std::strong_ordering::greater;
  }
  return a.edges_.size() <=> b.edges_.size();
}

namespace {

struct PartialEmbedding {
  std::vector<VertexId> map;       // discovery index -> graph vertex
  std::vector<std::int32_t> index;  // graph vertex -> discovery index, -1 if unmapped
};

/// Grows the minimum DFS code of `g` one tuple at a time, tracking every
/// partial traversal that realizes the current prefix. With `target`, stops
/// as soon as the minimum diverges from it.
class MinimumCodeSearch {
 public:
  explicit MinimumCodeSearch(const AttributedGraph& g) : g_(g) {}

  /// Returns the minimum code, or nullopt if `target` is given and is not it.
  std::optional<DfsCode> run(const DfsCode* target) {
    const std::size_t m = g_.edge_count();
    if (target && target->edge_count() != m) return std::nullopt;
    seed();
    if (target && !(best_ == (*target)[0])) return std::nullopt;
    code_.push_back(best_);
    link(best_);
    while (code_.edge_count() < m) {
      step();
      if (target && !(best_ == (*target)[code_.edge_count()])) return std::nullopt;
      code_.push_back(best_);
      link(best_);
    }
    return code_;
  }

 private:
  struct Choice {
    std::size_t embedding;
    VertexId new_vertex;  // -1 for backward edges
  };

  void seed() {
    const auto n = g_.vertex_count();
    linked_.assign(n * n, 0);
    bool have = false;
    std::vector<std::pair<VertexId, VertexId>> starts;
    for (const Edge& e : g_.edges()) {
      for (auto [u, v] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        DfsEdge cand{0, 1, g_.vertex_label(u), e.label, g_.vertex_label(v)};
        if (!have || dfs_edge_less(cand, best_)) {
          best_ = cand;
          have = true;
          starts.clear();
        }
        if (cand == best_) starts.emplace_back(u, v);
      }
    }
    for (auto [u, v] : starts) {
      PartialEmbedding emb;
      emb.map = {u, v};
      emb.index.assign(n, -1);
      emb.index[static_cast<std::size_t>(u)] = 0;
      emb.index[static_cast<std::size_t>(v)] = 1;
      embeddings_.push_back(std::move(emb));
    }
  }

  void link(const DfsEdge& e) {
    const auto n = g_.vertex_count();
    linked_[static_cast<std::size_t>(e.from) * n + static_cast<std::size_t>(e.to)] = 1;
    linked_[static_cast<std::size_t>(e.to) * n + static_cast<std::size_t>(e.from)] = 1;
  }

  bool linked(std::int32_t a, std::int32_t b) const {
    return linked_[static_cast<std::size_t>(a) * g_.vertex_count() + static_cast<std::size_t>(b)] != 0;
  }

  void offer(const DfsEdge& cand, std::size_t emb, VertexId w, bool& have) {
    if (!have || dfs_edge_less(cand, best_)) {
      best_ = cand;
      have = true;
      choices_.clear();
    }
    if (cand == best_) choices_.push_back({emb, w});
  }

  void step() {
    const auto path = code_.rightmost_path();
    const std::int32_t rm = path.back();
    const auto next = static_cast<std::int32_t>(code_.vertex_count());
    const auto labels = code_.vertex_labels();
    bool have = false;
    choices_.clear();

    for (std::size_t k = 0; k < embeddings_.size(); ++k) {
      const PartialEmbedding& emb = embeddings_[k];
      const VertexId grm = emb.map[static_cast<std::size_t>(rm)];
      // Backward edges from the rightmost vertex, earliest path vertex first.
      for (std::size_t p = 0; p + 1 < path.size(); ++p) {
        const std::int32_t j = path[p];
        if (linked(rm, j)) continue;
        if (auto le = g_.edge_label(grm, emb.map[static_cast<std::size_t>(j)])) {
          offer({rm, j, labels[static_cast<std::size_t>(rm)], *le, labels[static_cast<std::size_t>(j)]}, k, -1, have);
        }
      }
      // Forward edges, rightmost vertex first, then up the path.
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        const std::int32_t i = *it;
        for (const Neighbor& nb : g_.neighbors(emb.map[static_cast<std::size_t>(i)])) {
          if (emb.index[static_cast<std::size_t>(nb.vertex)] != -1) continue;
          offer({i, next, labels[static_cast<std::size_t>(i)], nb.edge_label, g_.vertex_label(nb.vertex)}, k,
                nb.vertex, have);
        }
      }
    }

    std::vector<PartialEmbedding> grown;
    grown.reserve(choices_.size());
    for (const Choice& c : choices_) {
      if (c.new_vertex < 0) {
        grown.push_back(embeddings_[c.embedding]);
      } else {
        PartialEmbedding emb = embeddings_[c.embedding];
        emb.map.push_back(c.new_vertex);
        emb.index[static_cast<std::size_t>(c.new_vertex)] = next;
        grown.push_back(std::move(emb));
      }
    }
    // Backward choices can repeat an embedding; keep each once.
    if (!best_.is_forward()) {
      std::sort(grown.begin(), grown.end(), [](const auto& a, const auto& b) { return a.map < b.map; });
      grown.erase(std::unique(grown.begin(), grown.end(), [](const auto& a, const auto& b) { return a.map == b.map; }),
                  grown.end());
    }
    embeddings_ = std::move(grown);
  }

  const AttributedGraph& g_;
  DfsCode code_;
  DfsEdge best_;
  std::vector<PartialEmbedding> embeddings_;
  std::vector<Choice> choices_;
  std::vector<char> linked_;
};

void require_connected(const AttributedGraph& g) {
  if (g.empty()) throw GraphError("cannot canonicalize an empty graph");
  if (!g.is_connected()) throw GraphError("cannot canonicalize a disconnected graph");
}

}  // namespace

DfsCode canonical_code(const AttributedGraph& g) {
  require_connected(g);
  if (g.edge_count() == 0) return DfsCode::single_vertex(g.vertex_label(0));
  return *MinimumCodeSearch(g).run(nullptr);
}

bool is_minimal(const DfsCode& code) {
  if (code.edge_count() == 0) return !code.empty();
  const AttributedGraph g = code.to_graph();
  return MinimumCodeSearch(g).run(&code).has_value();
}

Pattern Pattern::from_graph(const AttributedGraph& g) {
  DfsCode code = canonical_code(g);
  AttributedGraph realized = code.to_graph();
  return Pattern(std::move(code), std::move(realized));
}

Pattern Pattern::from_code(DfsCode code) {
  code.validate();
  if (!is_minimal(code)) throw GraphError("DFS code '" + code.to_string() + "' is not minimal");
  return from_minimal_code(std::move(code));
}

Pattern Pattern::from_minimal_code(DfsCode code) {
  AttributedGraph g = code.to_graph();
  return Pattern(std::move(code), std::move(g));
}

bool is_same_pattern(const Pattern& a, const Pattern& b) noexcept { return a.code() == b.code(); }

}  // namespace pang

std::size_t std::hash<pang::DfsCode>::operator()(const pang::DfsCode& code) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::int64_t v) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  if (code.edge_count() == 0) {
    mix(code.empty() ? -1 : code.root_label());
    return h;
  }
  for (const auto& e : code.edges()) {
    mix(e.from);
    mix(e.to);
    mix(e.from_label);
    mix(e.edge_label);
    mix(e.to_label);
  }
  return h;
}
