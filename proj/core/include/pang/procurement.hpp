#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pang/graph.hpp"

namespace pang::procurement {

/// Vertex labels of agent graphs.
inline constexpr Label kBuyer = 0;
inline constexpr Label kWinner = 1;

/// Edge labels: total lots between a buyer and a winner.
enum class LotBucket : Label { L1 = 1, L2 = 2, L3 = 3 };

struct ContractRecord {
  std::string contract_id;
  std::string buyer_id;
  std::string winner_id;
  std::uint32_t lot_count = 1;
  std::optional<std::uint32_t> offers_received;
  int year = 0;
  std::string region_code;     ///< administrative subdivision of the supplier
  std::string activity_sector;
  std::string agent_category;  ///< category of the buyer
};

struct ExtractionConfig {
  std::string sector = "works";
  std::string category = "municipality";
  std::optional<int> year;             ///< nullopt: one window per calendar year present
  std::optional<std::string> region;   ///< nullopt: one group per region present
  std::size_t anomalous_edge_threshold = 2;
  std::size_t min_subset_size = 3;
  std::size_t max_subset_size = 200;
};

struct RedFlagTally {
  std::size_t flagged = 0;
  std::size_t clear = 0;
  std::size_t missing = 0;
};

/// A contract is red flagged when it received exactly one offer. Unknown
/// offer counts are not flagged; they are counted in `tally->missing`.
bool red_flag(const ContractRecord& c, RedFlagTally* tally = nullptr);

/// 1 lot -> L1, 2..5 -> L2, 6+ -> L3. Throws ArgumentError on 0.
LotBucket lot_bucket(std::uint64_t total_lots);

/// Contracts grouped around one focal municipality in one year and region.
struct ContractSubset {
  std::string focal_agent;
  int year = 0;
  std::string region;
  std::vector<std::size_t> contracts;  ///< indices into the record list, ascending
};

/// Filters records by sector, buyer category, year and region, then for every
/// focal municipality M in each (year, region) window collects the contracts
/// of M, of every winner W of M, and of every municipality that contracted
/// with such a W. Subsets outside [min_subset_size, max_subset_size] are
/// dropped. Ordered by (year, region, focal agent).
std::vector<ContractSubset> build_subsets(std::span<const ContractRecord> records, const ExtractionConfig& config);

struct AgentGraph {
  AttributedGraph graph;
  GraphLabel label = GraphLabel::Normal;
  std::string focal_agent;
  std::vector<std::string> agents;     ///< agent id per vertex
  std::vector<char> anomalous_edges;   ///< parallel to graph.edges()
  std::size_t anomalous_edge_count = 0;
};

/// One vertex per agent (buyers first, each role sorted by id), one edge per
/// buyer-winner pair labeled by the bucket of the lots summed over the
/// subset. An edge is anomalous if any of its contracts is red flagged; the
/// graph is anomalous iff at least `anomalous_edge_threshold` edges are.
AgentGraph extract_graph(std::span<const ContractRecord> records, const ContractSubset& subset,
                         const ExtractionConfig& config);

struct ExtractionResult {
  LabeledCollection collection;
  std::vector<AgentGraph> graphs;
  std::vector<ContractSubset> subsets;
  std::size_t filtered_contracts = 0;
  RedFlagTally tally;  ///< over the filtered contracts, each counted once
};

ExtractionResult extract_collection(std::span<const ContractRecord> records, const ExtractionConfig& config);

/// Maps record fields to column headers of a delimiter-separated file.
struct ColumnMapping {
  char delimiter = ',';
  std::map<std::string, std::string> columns;  ///< field name -> header

  /// Identity mapping over the field names listed in `field_names()`.
  static ColumnMapping defaults();
  /// key = value lines; '#' starts a comment; "delimiter = ;" or "\t" sets
  /// the delimiter, any field name remaps that field.
  static ColumnMapping parse(std::istream& in, const std::string& source = "<stream>");
  static ColumnMapping read(const std::filesystem::path& path);

  static const std::vector<std::string>& field_names();
};

/// Reads contracts with a header row. Throws ParseError listing every mapped
/// column missing from the header. Empty, "NA" and "NaN" offer counts are
/// treated as unknown.
std::vector<ContractRecord> parse_contracts(std::istream& in, const ColumnMapping& mapping,
                                            const std::string& source = "<stream>");
std::vector<ContractRecord> read_contracts(const std::filesystem::path& path, const ColumnMapping& mapping);

/// Tab-separated sidecar: graph index -> focal agent, year, region and sizes.
void write_provenance(std::ostream& out, const ExtractionResult& result);

}  // namespace pang::procurement
