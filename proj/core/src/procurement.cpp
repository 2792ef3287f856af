#include "pang/procurement.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <tuple>

#include "pang/error.hpp"

namespace pang::procurement {

bool red_flag(const ContractRecord& c, RedFlagTally* tally) {
  if (!c.offers_received) {
    if (tally) ++tally->missing;
    return false;
  }
  const bool flagged = *c.offers_received == 1;
  if (tally) ++(flagged ? tally->flagged : tally->clear);
  return flagged;
}

LotBucket lot_bucket(std::uint64_t total_lots) {
  if (total_lots == 0) throw ArgumentError("lot count must be >= 1");
  if (total_lots == 1) return LotBucket::L1;
  if (total_lots <= 5) return LotBucket::L2;
  return LotBucket::L3;
}

namespace {

bool passes_filter(const ContractRecord& c, const ExtractionConfig& config) {
  if (c.activity_sector != config.sector || c.agent_category != config.category) return false;
  if (config.year && c.year != *config.year) return false;
  if (config.region && c.region_code != *config.region) return false;
  return true;
}

void check_config(const ExtractionConfig& config) {
  if (config.anomalous_edge_threshold < 1) throw ArgumentError("anomalous-edge threshold must be >= 1");
  if (config.min_subset_size > config.max_subset_size) throw ArgumentError("min subset size exceeds max subset size");
}

}  // namespace

std::vector<ContractSubset> build_subsets(std::span<const ContractRecord> records, const ExtractionConfig& config) {
  check_config(config);
  std::map<std::pair<int, std::string>, std::vector<std::size_t>> windows;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (passes_filter(records[i], config)) windows[{records[i].year, records[i].region_code}].push_back(i);
  }

  std::vector<ContractSubset> out;
  for (const auto& [key, members] : windows) {
    std::map<std::string, std::vector<std::size_t>> by_buyer;
    std::map<std::string, std::set<std::string>> buyers_of_winner;
    for (std::size_t i : members) {
      by_buyer[records[i].buyer_id].push_back(i);
      buyers_of_winner[records[i].winner_id].insert(records[i].buyer_id);
    }
    for (const auto& [focal, own] : by_buyer) {
      std::set<std::string> related;
      for (std::size_t i : own) {
        const auto& co = buyers_of_winner[records[i].winner_id];
        related.insert(co.begin(), co.end());
      }
      ContractSubset subset{focal, key.first, key.second, {}};
      for (const auto& buyer : related) {
        const auto& cs = by_buyer[buyer];
        subset.contracts.insert(subset.contracts.end(), cs.begin(), cs.end());
      }
      std::sort(subset.contracts.begin(), subset.contracts.end());
      if (subset.contracts.size() < config.min_subset_size || subset.contracts.size() > config.max_subset_size) {
        continue;
      }
      out.push_back(std::move(subset));
    }
  }
  return out;
}

AgentGraph extract_graph(std::span<const ContractRecord> records, const ContractSubset& subset,
                         const ExtractionConfig& config) {
  check_config(config);
  if (subset.contracts.empty()) throw ArgumentError("cannot extract a graph from an empty contract subset");

  std::set<std::string> buyers, winners;
  struct PairInfo {
    std::uint64_t lots = 0;
    bool anomalous = false;
  };
  std::map<std::pair<std::string, std::string>, PairInfo> pairs;
  for (std::size_t i : subset.contracts) {
    const ContractRecord& c = records[i];
    if (c.buyer_id == c.winner_id) {
      throw ArgumentError("contract '" + c.contract_id + "' has the same agent as buyer and winner");
    }
    buyers.insert(c.buyer_id);
    winners.insert(c.winner_id);
    auto& info = pairs[{c.buyer_id, c.winner_id}];
    info.lots += c.lot_count;
    info.anomalous = info.anomalous || red_flag(c);
  }
  if (buyers.empty() || winners.empty()) throw ArgumentError("contract subset has agents of a single role");

  AgentGraph out;
  out.focal_agent = subset.focal_agent;
  std::map<std::string, VertexId> buyer_index, winner_index;
  std::vector<Label> labels;
  for (const auto& b : buyers) {
    buyer_index[b] = static_cast<VertexId>(labels.size());
    labels.push_back(kBuyer);
    out.agents.push_back(b);
  }
  for (const auto& w : winners) {
    winner_index[w] = static_cast<VertexId>(labels.size());
    labels.push_back(kWinner);
    out.agents.push_back(w);
  }
  std::vector<Edge> edges;
  for (const auto& [key, info] : pairs) {
    edges.push_back({buyer_index[key.first], winner_index[key.second], static_cast<Label>(lot_bucket(info.lots))});
    out.anomalous_edges.push_back(info.anomalous ? 1 : 0);
    out.anomalous_edge_count += info.anomalous ? 1 : 0;
  }
  out.graph = AttributedGraph(std::move(labels), std::move(edges));
  out.label = out.anomalous_edge_count >= config.anomalous_edge_threshold ? GraphLabel::Anomalous : GraphLabel::Normal;
  return out;
}

ExtractionResult extract_collection(std::span<const ContractRecord> records, const ExtractionConfig& config) {
  ExtractionResult result;
  for (const ContractRecord& c : records) {
    if (!passes_filter(c, config)) continue;
    ++result.filtered_contracts;
    red_flag(c, &result.tally);
  }
  result.subsets = build_subsets(records, config);
  for (const ContractSubset& subset : result.subsets) {
    AgentGraph g = extract_graph(records, subset, config);
    result.collection.add(g.graph, g.label);
    result.graphs.push_back(std::move(g));
  }
  return result;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

/// Splits one delimited line; double quotes protect delimiters and "" escapes
/// a quote.
std::vector<std::string> split_record(std::string_view line, char delimiter) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == delimiter) {
      out.push_back(std::move(field));
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  out.push_back(std::move(field));
  return out;
}

template <typename Int>
bool to_int(std::string_view s, Int& out) {
  s = trim(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

const std::vector<std::string>& ColumnMapping::field_names() {
  static const std::vector<std::string> names{"contract_id",   "buyer_id", "winner_id",       "lot_count",
                                              "offers_received", "year",   "region_code",     "activity_sector",
                                              "agent_category"};
  return names;
}

ColumnMapping ColumnMapping::defaults() {
  ColumnMapping m;
  for (const auto& f : field_names()) m.columns[f] = f;
  return m;
}

ColumnMapping ColumnMapping::parse(std::istream& in, const std::string& source) {
  ColumnMapping m = defaults();
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, lineno, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key == "delimiter") {
      if (value == "\\t" || value == "tab") {
        m.delimiter = '\t';
      } else if (value.size() == 1) {
        m.delimiter = value[0];
      } else {
        throw ParseError(source, lineno, "delimiter must be a single character or \\t");
      }
    } else if (std::find(field_names().begin(), field_names().end(), key) != field_names().end()) {
      if (value.empty()) throw ParseError(source, lineno, "empty column name for '" + key + "'");
      m.columns[key] = value;
    } else {
      throw ParseError(source, lineno, "unknown field '" + key + "'");
    }
  }
  return m;
}

ColumnMapping ColumnMapping::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return parse(in, path.string());
}

std::vector<ContractRecord> parse_contracts(std::istream& in, const ColumnMapping& mapping, const std::string& source) {
  std::string raw;
  if (!std::getline(in, raw)) throw ParseError(source, 1, "missing header row");
  const auto header = split_record(raw, mapping.delimiter);
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < header.size(); ++i) position[std::string(trim(header[i]))] = i;

  std::map<std::string, std::size_t> column;
  std::string missing;
  for (const auto& field : ColumnMapping::field_names()) {
    auto mapped = mapping.columns.find(field);
    const std::string name = mapped == mapping.columns.end() ? field : mapped->second;
    auto it = position.find(name);
    if (it == position.end()) {
      missing += (missing.empty() ? "" : ", ") + name + " (" + field + ")";
    } else {
      column[field] = it->second;
    }
  }
  if (!missing.empty()) throw ParseError(source, 1, "missing columns: " + missing);

  std::vector<ContractRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, raw)) {
    ++lineno;
    if (trim(raw).empty()) continue;
    const auto f = split_record(raw, mapping.delimiter);
    if (f.size() != header.size()) {
      throw ParseError(source, lineno, "expected " + std::to_string(header.size()) + " fields, got " +
                                           std::to_string(f.size()));
    }
    auto get = [&](const char* field) { return std::string(trim(f[column.at(field)])); };
    ContractRecord c;
    c.contract_id = get("contract_id");
    c.buyer_id = get("buyer_id");
    c.winner_id = get("winner_id");
    if (c.buyer_id.empty() || c.winner_id.empty()) throw ParseError(source, lineno, "empty buyer or winner id");
    if (c.buyer_id == c.winner_id) throw ParseError(source, lineno, "buyer and winner are the same agent");
    if (!to_int(get("lot_count"), c.lot_count) || c.lot_count < 1) {
      throw ParseError(source, lineno, "lot count must be a positive integer");
    }
    const std::string offers = get("offers_received");
    if (!(offers.empty() || offers == "NA" || offers == "NaN" || offers == "nan")) {
      std::uint32_t n = 0;
      if (!to_int(offers, n)) throw ParseError(source, lineno, "malformed offer count '" + offers + "'");
      c.offers_received = n;
    }
    if (!to_int(get("year"), c.year)) throw ParseError(source, lineno, "malformed year");
    c.region_code = get("region_code");
    c.activity_sector = get("activity_sector");
    c.agent_category = get("agent_category");
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ContractRecord> read_contracts(const std::filesystem::path& path, const ColumnMapping& mapping) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return parse_contracts(in, mapping, path.string());
}

void write_provenance(std::ostream& out, const ExtractionResult& result) {
  out << "graph\tfocal_agent\tyear\tregion\tcontracts\tvertices\tedges\tanomalous_edges\tlabel\n";
  for (std::size_t i = 0; i < result.graphs.size(); ++i) {
    const auto& g = result.graphs[i];
    const auto& s = result.subsets[i];
    out << i << '\t' << s.focal_agent << '\t' << s.year << '\t' << s.region << '\t' << s.contracts.size() << '\t'
        << g.graph.vertex_count() << '\t' << g.graph.edge_count() << '\t' << g.anomalous_edge_count << '\t'
        << to_string(g.label) << '\n';
  }
}

}  // namespace pang::procurement
