#include <gtest/gtest.h>

#include <algorithm>

#include "slicecount/digraph.hpp"
#include "slicecount/errors.hpp"
#include "slicecount/generators.hpp"

namespace slicecount {
namespace {

Digraph reversed(const Digraph& g) {
  Digraph r(g.vertexCount());
  for (const Edge& e : g.edges()) r.addEdge(e.target, e.source);
  return r;
}

TEST(Digraph, ParsesPath) {
  Digraph g = parseDigraph("3 2\n0 1\n1 2");
  ASSERT_EQ(g.vertexCount(), 3u);
  ASSERT_EQ(g.edgeCount(), 2u);
  EXPECT_EQ(g.edge(0).source, 0u);
  EXPECT_EQ(g.edge(1).target, 2u);
  EXPECT_EQ(g.outEdges(1).size(), 1u);
  EXPECT_EQ(g.inEdges(1).size(), 1u);
}

TEST(Digraph, ParsesIsolatedVertex) {
  Digraph g = parseDigraph("1 0");
  EXPECT_EQ(g.vertexCount(), 1u);
  EXPECT_EQ(g.edgeCount(), 0u);
}

TEST(Digraph, BundledK4) {
  Digraph g = loadDigraph(std::string(SLICECOUNT_DATA_DIR) + "/k4.el");
  EXPECT_EQ(g.vertexCount(), 4u);
  EXPECT_EQ(g.edgeCount(), 12u);
}

TEST(Digraph, RoundTripsThroughText) {
  SeededRng rng(5);
  Digraph g = withRandomWeights(rng, bidirectedComplete(3), 4);
  Digraph h = parseDigraph(formatDigraph(g), g.semigroup());
  ASSERT_EQ(h.edgeCount(), g.edgeCount());
  for (EdgeId e = 0; e < g.edgeCount(); ++e) {
    EXPECT_EQ(h.edge(e).source, g.edge(e).source);
    EXPECT_EQ(h.edge(e).target, g.edge(e).target);
    EXPECT_EQ(h.edge(e).weight, g.edge(e).weight);
  }
}

TEST(Digraph, RejectsMalformedText) {
  EXPECT_THROW(parseDigraph("2 1\n0 5"), ParseError);
  EXPECT_THROW(parseDigraph("2 2\n0 1"), ParseError);
  EXPECT_THROW(parseDigraph("x"), ParseError);
}

TEST(Digraph, Dags) {
  EXPECT_TRUE(isDag(pathDigraph(3)));
  EXPECT_FALSE(isDag(cycleDigraph(2)));
  EXPECT_TRUE(isDag(directedGrid(4, 4)));
  EXPECT_FALSE(topologicalOrdering(cycleDigraph(3)).has_value());
  const Digraph grid = directedGrid(3, 3);
  auto order = topologicalOrdering(grid);
  ASSERT_TRUE(order.has_value());
  const auto pos = positions(*order);
  for (const Edge& e : grid.edges()) EXPECT_LT(pos[e.source], pos[e.target]);
}

TEST(Digraph, CutEdges) {
  EXPECT_EQ(cutEdges(pathDigraph(3), {0, 1, 2}, 1), std::vector<EdgeId>{0});
  EXPECT_EQ(cutEdges(cycleDigraph(2), {0, 1}, 1).size(), 2u);
  Digraph k4 = bidirectedComplete(4);
  auto cut = cutEdges(k4, {0, 1, 2, 3}, 2);
  ASSERT_EQ(cut.size(), 8u);
  for (EdgeId e : cut) EXPECT_NE(k4.edge(e).source < 2, k4.edge(e).target < 2);
}

TEST(Digraph, CutWidth) {
  EXPECT_EQ(cutWidth(pathDigraph(4), identityOrdering(4)), 1u);
  EXPECT_EQ(cutWidth(cycleDigraph(2), identityOrdering(2)), 2u);
  Ordering o = identityOrdering(4);
  do {
    EXPECT_EQ(cutWidth(bidirectedComplete(4), o), 8u);
  } while (std::next_permutation(o.begin(), o.end()));
}

TEST(Digraph, CutWidthIgnoresDirection) {
  SeededRng rng(11);
  for (int i = 0; i < 20; ++i) {
    Digraph g = randomDigraph(rng, 6, 0.3);
    Ordering o = identityOrdering(6);
    std::reverse(o.begin(), o.begin() + static_cast<long>(rng.below(7)));
    EXPECT_EQ(cutWidth(g, o), cutWidth(reversed(g), o));
  }
}

TEST(Digraph, PermutationCheck) {
  Digraph g = pathDigraph(3);
  EXPECT_NO_THROW(requirePermutation(g, {2, 0, 1}));
  EXPECT_THROW(requirePermutation(g, {0, 0, 1}), InvalidArgument);
  EXPECT_THROW(requirePermutation(g, {0, 1}), InvalidArgument);
  EXPECT_EQ(parseOrdering(formatOrdering({3, 1, 2, 0})), (Ordering{3, 1, 2, 0}));
}

}  // namespace
}  // namespace slicecount
