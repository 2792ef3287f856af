#pragma once

// Two-class collection separated by one motif: every anomalous graph hangs a
// star of four label-2 vertices off a random 0/1-labeled core; normal graphs
// hang a 0/1-labeled path of four vertices instead. The star dominates both
// the GF and the SF rankings.

#include <random>
#include <vector>

#include "brute_force.hpp"
#include "pang/graph.hpp"

namespace pang::fixtures {

inline LabeledCollection separable_collection(std::size_t graphs = 40, std::uint64_t seed = 64) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Label> bit(0, 1);
  LabeledCollection c;
  for (std::size_t i = 0; i < graphs; ++i) {
    const auto core = oracle::random_connected_graph(rng, 4, 2, 1, 0.3);
    std::vector<Label> labels(core.vertex_labels().begin(), core.vertex_labels().end());
    std::vector<Edge> edges(core.edges().begin(), core.edges().end());
    const bool anomalous = i % 2 == 0;
    const auto hub = static_cast<VertexId>(labels.size());
    for (int k = 0; k < 4; ++k) labels.push_back(anomalous ? 2 : bit(rng));
    edges.push_back({0, hub, 0});
    for (VertexId v = hub + 1; v < hub + 4; ++v) edges.push_back({anomalous ? hub : v - 1, v, 0});
    c.add(AttributedGraph(std::move(labels), std::move(edges)), anomalous ? GraphLabel::Anomalous : GraphLabel::Normal);
  }
  return c;
}

}  // namespace pang::fixtures
