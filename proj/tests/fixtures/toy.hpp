#pragma once

// Small two-class collection with two vertex labels (0 = brown, 1 = purple)
// and two edge labels (0 = green, 1 = red).
//
//   G1 (A): b0-p1 g, p1-b2 g, b2-p3 r, p3-p4 g, b2-p4 g
//   G2 (A): b0-p1 g, p1-b2 g, p1-b3 r
//   G3 (N): b0-p1 g, p1-p2 r
//   G4 (N): p0-b1 g, b1-p2 g
//
// P1 = b-g-p-g-b  induced in G1 and G2, closed, GF 2
// P2 = b-r-p-g-p  occurs in G1 only non-induced (the g edge b2-p4 closes it)
// P3 = b-g-p      single green edge

#include "pang/dfs_code.hpp"
#include "pang/graph.hpp"

namespace pang::fixtures {

inline constexpr Label kBrown = 0;
inline constexpr Label kPurple = 1;
inline constexpr Label kGreen = 0;
inline constexpr Label kRed = 1;

inline AttributedGraph toy_g1() {
  return AttributedGraph({kBrown, kPurple, kBrown, kPurple, kPurple},
                         {{0, 1, kGreen}, {1, 2, kGreen}, {2, 3, kRed}, {3, 4, kGreen}, {2, 4, kGreen}});
}
inline AttributedGraph toy_g2() {
  return AttributedGraph({kBrown, kPurple, kBrown, kBrown}, {{0, 1, kGreen}, {1, 2, kGreen}, {1, 3, kRed}});
}
inline AttributedGraph toy_g3() {
  return AttributedGraph({kBrown, kPurple, kPurple}, {{0, 1, kGreen}, {1, 2, kRed}});
}
inline AttributedGraph toy_g4() {
  return AttributedGraph({kPurple, kBrown, kPurple}, {{0, 1, kGreen}, {1, 2, kGreen}});
}

inline LabeledCollection toy_collection() {
  LabeledCollection c;
  c.add(toy_g1(), GraphLabel::Anomalous);
  c.add(toy_g2(), GraphLabel::Anomalous);
  c.add(toy_g3(), GraphLabel::Normal);
  c.add(toy_g4(), GraphLabel::Normal);
  return c;
}

inline Pattern toy_p1() {
  return Pattern::from_graph(AttributedGraph({kBrown, kPurple, kBrown}, {{0, 1, kGreen}, {1, 2, kGreen}}));
}
inline Pattern toy_p2() {
  return Pattern::from_graph(AttributedGraph({kBrown, kPurple, kPurple}, {{0, 1, kRed}, {1, 2, kGreen}}));
}
inline Pattern toy_p3() { return Pattern::from_graph(AttributedGraph({kBrown, kPurple}, {{0, 1, kGreen}})); }

}  // namespace pang::fixtures
