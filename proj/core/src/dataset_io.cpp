#include "pang/dataset_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "pang/error.hpp"

namespace pang {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename Int>
bool to_int(std::string_view s, Int& out) {
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

template <typename Int>
Int need_int(std::string_view s, const std::string& source, std::size_t line, const char* what) {
  Int v{};
  if (!to_int(s, v)) throw ParseError(source, line, std::string("expected integer ") + what + ", got '" + std::string(s) + "'");
  return v;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

struct GraphBuilder {
  std::size_t header_line = 0;
  GraphLabel label = GraphLabel::Normal;
  std::vector<Label> vertex_labels;
  std::unordered_map<long long, VertexId> ids;
  std::vector<Edge> edges;
};

}  // namespace

LabeledCollection parse_transactions(std::istream& in, const std::string& source) {
  LabeledCollection out;
  std::optional<GraphBuilder> current;
  auto flush = [&] {
    if (!current) return;
    try {
      out.add(AttributedGraph(std::move(current->vertex_labels), std::move(current->edges)), current->label);
    } catch (const GraphError& e) {
      throw ParseError(source, current->header_line, e.what());
    }
    current.reset();
  };

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto tok = tokens(raw);
    if (tok.empty() || tok[0].front() == '%') continue;
    if (tok[0] == "t") {
      if (tok.size() < 3 || tok[1] != "#") throw ParseError(source, lineno, "expected 't # <index> <label>'");
      const auto index = need_int<long long>(tok[2], source, lineno, "graph index");
      if (index == -1) break;
      if (tok.size() != 4) throw ParseError(source, lineno, "expected 't # <index> <label>'");
      flush();
      if (index != static_cast<long long>(out.size())) {
        throw ParseError(source, lineno, "graph index " + std::to_string(index) + " out of sequence, expected " +
                                             std::to_string(out.size()));
      }
      const auto cls = need_int<int>(tok[3], source, lineno, "graph label");
      if (cls != 0 && cls != 1) throw ParseError(source, lineno, "graph label must be 0 or 1");
      current.emplace();
      current->header_line = lineno;
      current->label = cls == 1 ? GraphLabel::Anomalous : GraphLabel::Normal;
    } else if (tok[0] == "v") {
      if (!current) throw ParseError(source, lineno, "vertex line before any 't' line");
      if (tok.size() != 3) throw ParseError(source, lineno, "expected 'v <id> <label>'");
      const auto id = need_int<long long>(tok[1], source, lineno, "vertex id");
      const auto label = need_int<Label>(tok[2], source, lineno, "vertex label");
      if (!current->ids.emplace(id, static_cast<VertexId>(current->vertex_labels.size())).second) {
        throw ParseError(source, lineno, "duplicate vertex id " + std::to_string(id));
      }
      current->vertex_labels.push_back(label);
    } else if (tok[0] == "e") {
      if (!current) throw ParseError(source, lineno, "edge line before any 't' line");
      if (tok.size() != 4) throw ParseError(source, lineno, "expected 'e <u> <v> <label>'");
      const auto u = need_int<long long>(tok[1], source, lineno, "edge endpoint");
      const auto v = need_int<long long>(tok[2], source, lineno, "edge endpoint");
      const auto label = need_int<Label>(tok[3], source, lineno, "edge label");
      auto iu = current->ids.find(u);
      auto iv = current->ids.find(v);
      if (iu == current->ids.end() || iv == current->ids.end()) {
        throw ParseError(source, lineno, "edge references undeclared vertex " +
                                             std::to_string(iu == current->ids.end() ? u : v));
      }
      if (iu->second == iv->second) throw ParseError(source, lineno, "self-loop");
      current->edges.push_back({iu->second, iv->second, label});
    } else {
      throw ParseError(source, lineno, "unknown record type '" + std::string(tok[0]) + "'");
    }
  }
  flush();
  return out;
}

LabeledCollection read_transactions(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_transactions(in, path.string());
}

void write_transactions(std::ostream& out, const LabeledCollection& collection) {
  for (std::size_t i = 0; i < collection.size(); ++i) {
    const AttributedGraph& g = collection.graph(i);
    out << "t # " << i << ' ' << (collection.label(i) == GraphLabel::Anomalous ? 1 : 0) << '\n';
    for (std::size_t v = 0; v < g.vertex_count(); ++v) out << "v " << v << ' ' << g.vertex_labels()[v] << '\n';
    for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << ' ' << e.label << '\n';
  }
}

void write_transactions(const std::filesystem::path& path, const LabeledCollection& collection) {
  auto out = open_out(path);
  write_transactions(out, collection);
  finish_write(out, path);
}

namespace {

std::vector<std::vector<long long>> read_int_rows(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<std::vector<long long>> rows;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (trim(raw).empty()) continue;
    std::vector<long long> row;
    for (auto field : split(raw, ',')) row.push_back(need_int<long long>(field, path.string(), lineno, "value"));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

LabeledCollection read_benchmark(const std::filesystem::path& dir, const BenchmarkOptions& options) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw IoError("'" + dir.string() + "' is not a directory");
  std::string prefix;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 6 && name.ends_with("_A.txt")) {
      if (!prefix.empty()) throw IoError("several *_A.txt files in '" + dir.string() + "'");
      prefix = name.substr(0, name.size() - 6);
    }
  }
  if (prefix.empty()) throw IoError("no *_A.txt adjacency file in '" + dir.string() + "'");
  auto file = [&](const char* suffix) { return dir / (prefix + suffix); };

  const auto adjacency = read_int_rows(file("_A.txt"));
  const auto indicator = read_int_rows(file("_graph_indicator.txt"));
  const auto graph_labels = read_int_rows(file("_graph_labels.txt"));
  std::vector<std::vector<long long>> node_labels, edge_labels;
  if (fs::exists(file("_node_labels.txt"))) node_labels = read_int_rows(file("_node_labels.txt"));
  if (fs::exists(file("_edge_labels.txt"))) edge_labels = read_int_rows(file("_edge_labels.txt"));

  const std::size_t n = indicator.size();
  const std::size_t graphs = graph_labels.size();
  if (!node_labels.empty() && node_labels.size() != n) {
    throw ParseError(file("_node_labels.txt").string(), 0,
                     "has " + std::to_string(node_labels.size()) + " rows, expected " + std::to_string(n));
  }
  if (!edge_labels.empty() && edge_labels.size() != adjacency.size()) {
    throw ParseError(file("_edge_labels.txt").string(), 0,
                     "has " + std::to_string(edge_labels.size()) + " rows, expected " + std::to_string(adjacency.size()));
  }

  std::set<long long> classes;
  for (const auto& row : graph_labels) {
    if (row.size() != 1) throw ParseError(file("_graph_labels.txt").string(), 0, "expected one value per line");
    classes.insert(row[0]);
  }
  if (classes.size() > 2 || (classes.size() == 2 && !classes.contains(options.positive_label))) {
    throw ParseError(file("_graph_labels.txt").string(), 0,
                     "unknown label values: expected at most two classes including " +
                         std::to_string(options.positive_label));
  }

  // Global 1-based vertex id -> (graph, local id).
  std::vector<std::size_t> graph_of(n);
  std::vector<VertexId> local(n);
  std::vector<std::vector<Label>> vlabels(graphs);
  for (std::size_t i = 0; i < n; ++i) {
    if (indicator[i].size() != 1 || indicator[i][0] < 1 || static_cast<std::size_t>(indicator[i][0]) > graphs) {
      throw ParseError(file("_graph_indicator.txt").string(), i + 1, "graph id outside 1.." + std::to_string(graphs));
    }
    const auto g = static_cast<std::size_t>(indicator[i][0] - 1);
    graph_of[i] = g;
    local[i] = static_cast<VertexId>(vlabels[g].size());
    vlabels[g].push_back(node_labels.empty() ? 0 : static_cast<Label>(node_labels[i][0]));
  }

  std::vector<std::vector<Edge>> edges(graphs);
  std::vector<std::set<std::pair<VertexId, VertexId>>> seen(graphs);
  for (std::size_t k = 0; k < adjacency.size(); ++k) {
    const auto& row = adjacency[k];
    const std::string src = file("_A.txt").string();
    if (row.size() != 2) throw ParseError(src, k + 1, "expected 'u, v'");
    if (row[0] < 1 || row[1] < 1 || static_cast<std::size_t>(row[0]) > n || static_cast<std::size_t>(row[1]) > n) {
      throw ParseError(src, k + 1, "vertex id outside 1.." + std::to_string(n));
    }
    const auto u = static_cast<std::size_t>(row[0] - 1);
    const auto v = static_cast<std::size_t>(row[1] - 1);
    if (graph_of[u] != graph_of[v]) throw ParseError(src, k + 1, "edge joins two different graphs");
    if (u == v) throw ParseError(src, k + 1, "self-loop");
    const std::size_t g = graph_of[u];
    auto key = std::minmax(local[u], local[v]);
    if (!seen[g].insert(key).second) continue;
    const Label el = edge_labels.empty() ? 0 : static_cast<Label>(edge_labels[k][0]);
    edges[g].push_back({key.first, key.second, el});
  }

  LabeledCollection out;
  for (std::size_t g = 0; g < graphs; ++g) {
    if (vlabels[g].empty()) {
      throw ParseError(file("_graph_indicator.txt").string(), 0, "graph " + std::to_string(g + 1) + " has no vertices");
    }
    out.add(AttributedGraph(std::move(vlabels[g]), std::move(edges[g])),
            graph_labels[g][0] == options.positive_label ? GraphLabel::Anomalous : GraphLabel::Normal);
  }
  return out;
}

LabeledCollection read_collection(const std::filesystem::path& path, const BenchmarkOptions& options) {
  if (std::filesystem::is_directory(path)) return read_benchmark(path, options);
  if (!std::filesystem::exists(path)) throw IoError("'" + path.string() + "' does not exist");
  return read_transactions(path);
}

namespace {

constexpr std::string_view kPatternMagic = "# pang-patterns v1";
constexpr std::string_view kPatternColumns =
    "code\tgf_a\tgf_n\tsf_a\tsf_n\tdisc_gf\tdisc_sf\tclosed\tinduced\tind_gf_a\tind_gf_n\tind_sf_a\tind_sf_n\tscore";

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::uint64_t abs_diff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

}  // namespace

void write_patterns(std::ostream& out, const PatternSet& set) {
  std::vector<std::size_t> order(set.records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = set.records[a];
    const auto& y = set.records[b];
    if (x.score != y.score) return x.score > y.score;
    if (x.stats.gf() != y.stats.gf()) return x.stats.gf() > y.stats.gf();
    return x.code < y.code;
  });
  out << kPatternMagic << '\n';
  out << "# classes\tA=" << set.class_a << "\tN=" << set.class_n << '\n';
  out << kPatternColumns << '\n';
  for (std::size_t i : order) {
    const auto& r = set.records[i];
    out << r.code.to_string() << '\t' << r.stats.gf_a << '\t' << r.stats.gf_n << '\t' << r.stats.sf_a << '\t'
        << r.stats.sf_n << '\t' << abs_diff(r.stats.gf_a, r.stats.gf_n) << '\t' << abs_diff(r.stats.sf_a, r.stats.sf_n)
        << '\t' << (r.closed ? 1 : 0) << '\t' << (r.induced ? 1 : 0) << '\t' << r.induced_stats.gf_a << '\t'
        << r.induced_stats.gf_n << '\t' << r.induced_stats.sf_a << '\t' << r.induced_stats.sf_n << '\t'
        << format_double(r.score) << '\n';
  }
}

void write_patterns(const std::filesystem::path& path, const PatternSet& set) {
  auto out = open_out(path);
  write_patterns(out, set);
  finish_write(out, path);
}

PatternSet parse_patterns(std::istream& in, const std::string& source) {
  PatternSet set;
  std::string raw;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, raw)) return false;
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    return true;
  };
  if (!next_line() || raw != kPatternMagic) throw ParseError(source, 1, "missing '# pang-patterns v1' header");
  if (!next_line()) throw ParseError(source, 2, "missing class-size line");
  {
    auto f = split(raw, '\t');
    if (f.size() != 3 || f[0] != "# classes" || !f[1].starts_with("A=") || !f[2].starts_with("N=")) {
      throw ParseError(source, lineno, "malformed class-size line");
    }
    set.class_a = need_int<std::size_t>(f[1].substr(2), source, lineno, "class size");
    set.class_n = need_int<std::size_t>(f[2].substr(2), source, lineno, "class size");
  }
  if (!next_line() || raw != kPatternColumns) throw ParseError(source, lineno, "missing column header");
  while (next_line()) {
    if (raw.empty()) continue;
    auto f = split(raw, '\t');
    if (f.size() != 14) throw ParseError(source, lineno, "expected 14 tab-separated columns");
    PatternRecord r;
    try {
      r.code = DfsCode::parse(f[0]);
    } catch (const ArgumentError& e) {
      throw ParseError(source, lineno, e.what());
    }
    auto u64 = [&](std::size_t i) { return need_int<std::uint64_t>(f[i], source, lineno, "count"); };
    r.stats = {u64(1), u64(2), u64(3), u64(4)};
    r.closed = u64(7) != 0;
    r.induced = u64(8) != 0;
    r.induced_stats = {u64(9), u64(10), u64(11), u64(12)};
    auto sv = trim(f[13]);
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), r.score);
    if (ec != std::errc{} || ptr != sv.data() + sv.size()) throw ParseError(source, lineno, "malformed score");
    set.records.push_back(std::move(r));
  }
  return set;
}

PatternSet read_patterns(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_patterns(in, path.string());
}

void write_matrix(std::ostream& out, const FeatureMatrix& h, std::span<const GraphLabel> labels) {
  if (labels.size() != h.rows()) throw ArgumentError("write_matrix: one label per row required");
  for (std::size_t c = 0; c < h.cols(); ++c) out << 'p' << (c + 1) << ',';
  out << "label\n";
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (auto v : h.row(r)) out << v << ',';
    out << to_string(labels[r]) << '\n';
  }
}

void write_matrix(const std::filesystem::path& path, const FeatureMatrix& h, std::span<const GraphLabel> labels) {
  auto out = open_out(path);
  write_matrix(out, h, labels);
  finish_write(out, path);
}

MatrixFile parse_matrix(std::istream& in, const std::string& source) {
  MatrixFile m;
  std::string raw;
  std::size_t lineno = 0;
  if (!std::getline(in, raw)) throw ParseError(source, 1, "missing header");
  ++lineno;
  const auto header = split(trim(raw), ',');
  if (header.empty() || header.back() != "label") throw ParseError(source, 1, "header must end with 'label'");
  m.cols = header.size() - 1;
  while (std::getline(in, raw)) {
    ++lineno;
    if (trim(raw).empty()) continue;
    auto f = split(trim(raw), ',');
    if (f.size() != m.cols + 1) throw ParseError(source, lineno, "wrong number of columns");
    for (std::size_t c = 0; c < m.cols; ++c) m.values.push_back(need_int<std::uint64_t>(f[c], source, lineno, "entry"));
    if (f.back() == "A") {
      m.labels.push_back(GraphLabel::Anomalous);
    } else if (f.back() == "N") {
      m.labels.push_back(GraphLabel::Normal);
    } else {
      throw ParseError(source, lineno, "label must be A or N");
    }
    ++m.rows;
  }
  return m;
}

}  // namespace pang
