#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "brute_force.hpp"
#include "contracts12.hpp"
#include "pang/error.hpp"
#include "pang/procurement.hpp"

namespace pang::procurement {
namespace {

ContractRecord contract(std::string id, std::string buyer, std::string winner, std::uint32_t lots,
                        std::optional<std::uint32_t> offers, std::string region = "R1") {
  ContractRecord c;
  c.contract_id = std::move(id);
  c.buyer_id = std::move(buyer);
  c.winner_id = std::move(winner);
  c.lot_count = lots;
  c.offers_received = offers;
  c.year = 2016;
  c.region_code = std::move(region);
  c.activity_sector = "works";
  c.agent_category = "municipality";
  return c;
}

ExtractionConfig loose() {
  ExtractionConfig cfg;
  cfg.min_subset_size = 1;
  return cfg;
}

std::vector<ContractRecord> fixture12() {
  return read_contracts(PANG_FIXTURE_DIR "/contracts12.csv", ColumnMapping::defaults());
}

TEST(RedFlag, SingleOfferOnly) {
  RedFlagTally tally;
  EXPECT_TRUE(red_flag(contract("a", "M", "W", 1, 1), &tally));
  EXPECT_FALSE(red_flag(contract("b", "M", "W", 1, 2), &tally));
  EXPECT_FALSE(red_flag(contract("c", "M", "W", 1, std::nullopt), &tally));
  EXPECT_EQ(tally.flagged, 1u);
  EXPECT_EQ(tally.clear, 1u);
  EXPECT_EQ(tally.missing, 1u);
}

TEST(LotBucket, Boundaries) {
  EXPECT_EQ(lot_bucket(1), LotBucket::L1);
  EXPECT_EQ(lot_bucket(2), LotBucket::L2);
  EXPECT_EQ(lot_bucket(5), LotBucket::L2);
  EXPECT_EQ(lot_bucket(6), LotBucket::L3);
  EXPECT_EQ(lot_bucket(1000), LotBucket::L3);
  EXPECT_THROW(lot_bucket(0), ArgumentError);
}

TEST(BuildSubsets, OneContract) {
  const std::vector<ContractRecord> rs{contract("a", "M1", "W1", 1, 3)};
  const auto subsets = build_subsets(rs, loose());
  ASSERT_EQ(subsets.size(), 1u);
  EXPECT_EQ(subsets[0].focal_agent, "M1");
  EXPECT_EQ(subsets[0].contracts, (std::vector<std::size_t>{0}));
}

TEST(BuildSubsets, SharedWinnerJoinsMunicipalities) {
  const std::vector<ContractRecord> rs{contract("a", "M1", "W", 1, 3), contract("b", "M2", "W", 1, 3),
                                       contract("c", "M3", "X", 1, 3)};
  const auto subsets = build_subsets(rs, loose());
  ASSERT_EQ(subsets.size(), 3u);
  EXPECT_EQ(subsets[0].contracts, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(subsets[1].contracts, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(subsets[2].contracts, (std::vector<std::size_t>{2}));
}

TEST(BuildSubsets, OutOfRegionSupplierExcluded) {
  const std::vector<ContractRecord> rs{contract("a", "M1", "W", 1, 3), contract("b", "M1", "Far", 1, 1, "R9")};
  auto cfg = loose();
  cfg.region = "R1";
  const auto subsets = build_subsets(rs, cfg);
  ASSERT_EQ(subsets.size(), 1u);
  EXPECT_EQ(subsets[0].contracts, (std::vector<std::size_t>{0}));
}

TEST(BuildSubsets, SizeBoundsAndCalendarYears) {
  std::vector<ContractRecord> rs{contract("a", "M1", "W", 1, 3), contract("b", "M1", "W", 1, 3),
                                 contract("c", "M1", "W", 1, 3)};
  rs[2].year = 2017;
  auto cfg = loose();
  cfg.min_subset_size = 2;
  auto subsets = build_subsets(rs, cfg);
  ASSERT_EQ(subsets.size(), 1u);
  EXPECT_EQ(subsets[0].year, 2016);
  cfg.min_subset_size = 1;
  cfg.max_subset_size = 1;
  subsets = build_subsets(rs, cfg);
  ASSERT_EQ(subsets.size(), 1u);
  EXPECT_EQ(subsets[0].year, 2017);
  cfg.max_subset_size = 0;
  EXPECT_THROW(build_subsets(rs, cfg), ArgumentError);
}

TEST(ExtractGraph, SingleFlaggedEdgeStaysNormal) {
  const std::vector<ContractRecord> rs{contract("a", "B", "W", 1, 1)};
  const auto g = extract_graph(rs, build_subsets(rs, loose()).at(0), loose());
  EXPECT_EQ(g.graph, AttributedGraph({kBuyer, kWinner}, {{0, 1, 1}}));
  EXPECT_EQ(g.anomalous_edge_count, 1u);
  EXPECT_EQ(g.label, GraphLabel::Normal);
}

TEST(ExtractGraph, TwoFlaggedEdgesAreAnomalous) {
  const std::vector<ContractRecord> rs{contract("a", "B", "W", 1, 1), contract("b", "B", "V", 1, 1)};
  const auto g = extract_graph(rs, build_subsets(rs, loose()).at(0), loose());
  EXPECT_EQ(g.graph.edge_count(), 2u);
  EXPECT_EQ(g.label, GraphLabel::Anomalous);
  auto strict = loose();
  strict.anomalous_edge_threshold = 3;
  EXPECT_EQ(extract_graph(rs, build_subsets(rs, strict).at(0), strict).label, GraphLabel::Normal);
}

TEST(ExtractGraph, RejectsEmptySubsetAndSelfContract) {
  const std::vector<ContractRecord> rs{contract("a", "B", "B", 1, 1)};
  EXPECT_THROW(extract_graph(rs, ContractSubset{"B", 2016, "R1", {}}, loose()), ArgumentError);
  EXPECT_THROW(extract_graph(rs, ContractSubset{"B", 2016, "R1", {0}}, loose()), ArgumentError);
}

TEST(ExtractCollection, TwelveContractGolden) {
  const auto records = fixture12();
  ASSERT_EQ(records.size(), 12u);
  const auto result = extract_collection(records, ExtractionConfig{});
  const auto expected = fixtures::expected_contracts12();
  ASSERT_EQ(result.graphs.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(result.graphs[i].focal_agent, expected[i].focal);
    EXPECT_EQ(result.graphs[i].agents, expected[i].agents);
    EXPECT_EQ(result.graphs[i].graph, expected[i].graph);
    EXPECT_EQ(result.graphs[i].anomalous_edges, expected[i].anomalous_edges);
    EXPECT_EQ(result.graphs[i].label, expected[i].label);
    EXPECT_EQ(result.collection.label(i), expected[i].label);
  }
  EXPECT_EQ(result.filtered_contracts, 10u);
  EXPECT_EQ(result.tally.flagged, 4u);
  EXPECT_EQ(result.tally.missing, 1u);
  EXPECT_EQ(result.tally.clear, 5u);
}

TEST(ExtractCollection, ThresholdOneFlipsTheBoundaryGraph) {
  ExtractionConfig cfg;
  cfg.anomalous_edge_threshold = 1;
  const auto result = extract_collection(fixture12(), cfg);
  ASSERT_EQ(result.graphs.size(), 3u);
  EXPECT_EQ(result.graphs[2].label, GraphLabel::Anomalous);
}

TEST(ExtractCollection, EmptyAfterFilter) {
  ExtractionConfig cfg;
  cfg.sector = "supplies";
  const auto result = extract_collection(fixture12(), cfg);
  EXPECT_EQ(result.collection.size(), 0u);
  EXPECT_EQ(result.filtered_contracts, 0u);
}

std::vector<ContractRecord> random_contracts(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> buyer(0, 3), winner(0, 5), lots(1, 7), offers(0, 4);
  std::vector<ContractRecord> rs;
  for (std::size_t i = 0; i < n; ++i) {
    const int o = offers(rng);
    rs.push_back(contract("c" + std::to_string(i), "M" + std::to_string(buyer(rng)), "W" + std::to_string(winner(rng)),
                          static_cast<std::uint32_t>(lots(rng)),
                          o == 0 ? std::nullopt : std::optional<std::uint32_t>(static_cast<std::uint32_t>(o))));
  }
  return rs;
}

TEST(ExtractCollection, GraphsAreBipartiteAndSubsetsCoverFilteredContracts) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rs = random_contracts(rng, 15);
    const auto result = extract_collection(rs, loose());
    std::size_t covered = 0;
    for (std::size_t i = 0; i < result.graphs.size(); ++i) {
      const auto& g = result.graphs[i].graph;
      for (const Edge& e : g.edges()) EXPECT_NE(g.vertex_label(e.u), g.vertex_label(e.v));
      covered += result.subsets[i].contracts.size();
    }
    EXPECT_GE(covered, result.filtered_contracts);
  }
}

TEST(ExtractCollection, RelabelingAgentsPreservesGraphs) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rs = random_contracts(rng, 12);
    auto renamed = rs;
    for (auto& c : renamed) {
      c.buyer_id = "zz-" + c.buyer_id;
      c.winner_id = std::string(1, static_cast<char>('a' + (c.winner_id[1] - '0') * 3 % 7)) + c.winner_id;
    }
    const auto a = extract_collection(rs, loose());
    const auto b = extract_collection(renamed, loose());
    ASSERT_EQ(a.graphs.size(), b.graphs.size());
    for (std::size_t i = 0; i < a.graphs.size(); ++i) {
      EXPECT_TRUE(oracle::brute_isomorphic(a.graphs[i].graph, b.graphs[i].graph));
      EXPECT_EQ(a.graphs[i].label, b.graphs[i].label);
    }
  }
}

TEST(ExtractCollection, AddingARedFlagNeverClearsAnAnomaly) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto rs = random_contracts(rng, 10);
    const auto subset = build_subsets(rs, loose()).at(0);
    const auto before = extract_graph(rs, subset, loose());
    std::uniform_int_distribution<std::size_t> pick(0, subset.contracts.size() - 1);
    auto extra = rs[subset.contracts[pick(rng)]];
    extra.contract_id = "extra";
    extra.offers_received = 1;
    rs.push_back(extra);
    auto grown = subset;
    grown.contracts.push_back(rs.size() - 1);
    const auto after = extract_graph(rs, grown, loose());
    EXPECT_GE(after.anomalous_edge_count, before.anomalous_edge_count);
    if (before.label == GraphLabel::Anomalous) {
      EXPECT_EQ(after.label, GraphLabel::Anomalous);
    }
  }
}

TEST(ContractFile, MissingColumnsAreListed) {
  std::istringstream in("contract_id,buyer_id,year\nc1,M,2016\n");
  try {
    parse_contracts(in, ColumnMapping::defaults());
    FAIL();
  } catch (const ParseError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("winner_id"), std::string::npos);
    EXPECT_NE(what.find("agent_category"), std::string::npos);
  }
}

TEST(ContractFile, MappingRenamesColumnsAndDelimiter) {
  std::istringstream cfg("# FOPPA-like layout\ndelimiter = ;\nbuyer_id = acheteur\nwinner_id = titulaire\n");
  const auto mapping = ColumnMapping::parse(cfg);
  EXPECT_EQ(mapping.delimiter, ';');
  std::istringstream in(
      "contract_id;acheteur;titulaire;lot_count;offers_received;year;region_code;activity_sector;agent_category\n"
      "\"c;1\";M1;W1;2;NaN;2018;R1;works;municipality\n");
  const auto rs = parse_contracts(in, mapping);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].contract_id, "c;1");
  EXPECT_EQ(rs[0].buyer_id, "M1");
  EXPECT_EQ(rs[0].lot_count, 2u);
  EXPECT_FALSE(rs[0].offers_received.has_value());
  std::istringstream bad("nonsense = x\n");
  EXPECT_THROW(ColumnMapping::parse(bad), ParseError);
}

TEST(ContractFile, RejectsBadRows) {
  const std::string header =
      "contract_id,buyer_id,winner_id,lot_count,offers_received,year,region_code,activity_sector,agent_category\n";
  std::istringstream same(header + "c,M,M,1,1,2016,R,works,municipality\n");
  EXPECT_THROW(parse_contracts(same, ColumnMapping::defaults()), ParseError);
  std::istringstream zero_lots(header + "c,M,W,0,1,2016,R,works,municipality\n");
  EXPECT_THROW(parse_contracts(zero_lots, ColumnMapping::defaults()), ParseError);
  std::istringstream short_row(header + "c,M,W\n");
  EXPECT_THROW(parse_contracts(short_row, ColumnMapping::defaults()), ParseError);
}

TEST(Provenance, OneRowPerGraph) {
  const auto result = extract_collection(fixture12(), ExtractionConfig{});
  std::ostringstream out;
  write_provenance(out, result);
  EXPECT_EQ(out.str(),
            "graph\tfocal_agent\tyear\tregion\tcontracts\tvertices\tedges\tanomalous_edges\tlabel\n"
            "0\tM1\t2016\tR1\t6\t5\t4\t2\tA\n"
            "1\tM2\t2016\tR1\t6\t5\t4\t2\tA\n"
            "2\tM3\t2016\tR1\t3\t2\t1\t1\tN\n");
}

}  // namespace
}  // namespace pang::procurement
