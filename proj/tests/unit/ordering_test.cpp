#include <gtest/gtest.h>

#include <algorithm>

#include "slicecount/errors.hpp"
#include "slicecount/generators.hpp"
#include "slicecount/ordering.hpp"

namespace slicecount {
namespace {

// The four-vertex figure graph: the path 0-1-2-3 plus 0->3 and 3->1.
Digraph figureGraph() {
  Digraph g(4);
  g.addEdge(0, 1);
  g.addEdge(1, 2);
  g.addEdge(2, 3);
  g.addEdge(0, 3);
  g.addEdge(3, 1);
  return g;
}

std::size_t bruteMinDvsn(const Digraph& g) {
  Ordering o = identityOrdering(g.vertexCount());
  std::size_t best = SIZE_MAX;
  do best = std::min(best, dvsn(g, o));
  while (std::next_permutation(o.begin(), o.end()));
  return best;
}

TEST(ZigZag, PathIsOneTopological) {
  Digraph path = pathDigraph(4);
  EXPECT_TRUE(verifyZigZag(path, identityOrdering(4), 1).verified);
  EXPECT_EQ(zigzagNumberOfOrdering(path, identityOrdering(4)), 1u);
}

TEST(ZigZag, FigureGraphNeedsThree) {
  Digraph g = figureGraph();
  const Ordering natural = identityOrdering(4);
  EXPECT_TRUE(verifyZigZag(g, natural, 3).verified);
  ZigZagVerdict v = verifyZigZag(g, natural, 2);
  ASSERT_FALSE(v.verified);
  EXPECT_EQ(v.pathVertices, (std::vector<VertexId>{0, 3, 1, 2}));
  EXPECT_EQ(v.cut, 2u);
  EXPECT_EQ(zigzagNumberOfOrdering(g, natural), 3u);
}

TEST(ZigZag, CounterexampleIsASimplePathOrCycle) {
  SeededRng rng(3);
  for (int i = 0; i < 30; ++i) {
    Digraph g = randomDigraph(rng, 6, 0.35);
    ZigZagVerdict v = verifyZigZag(g, identityOrdering(6), 1);
    if (v.verified) continue;
    ASSERT_EQ(v.pathEdges.size() + 1, v.pathVertices.size());
    for (std::size_t j = 0; j < v.pathEdges.size(); ++j) {
      EXPECT_EQ(g.edge(v.pathEdges[j]).source, v.pathVertices[j]);
      EXPECT_EQ(g.edge(v.pathEdges[j]).target, v.pathVertices[j + 1]);
    }
    auto sorted = v.pathVertices;
    if (sorted.size() > 2 && sorted.front() == sorted.back()) sorted.pop_back();
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  }
}

TEST(ZigZag, TopologicalOrderOfDagIsOneTopological) {
  SeededRng rng(17);
  for (int i = 0; i < 20; ++i) {
    Digraph g = randomDag(rng, 7, 0.4);
    EXPECT_TRUE(verifyZigZag(g, *topologicalOrdering(g), 1).verified);
  }
  Digraph grid = directedGrid(4, 4);
  EXPECT_TRUE(verifyZigZag(grid, *topologicalOrdering(grid), 1).verified);
}

TEST(ZigZag, OneTopologicalOnlyForDags) {
  SeededRng rng(19);
  for (int i = 0; i < 40; ++i) {
    Digraph g = randomDigraph(rng, 5, 0.25);
    Ordering o = identityOrdering(5);
    bool one = false;
    do one = one || zigzagNumberOfOrdering(g, o) <= 1;
    while (!one && std::next_permutation(o.begin(), o.end()));
    EXPECT_EQ(one, isDag(g));
  }
}

TEST(ZigZag, CyclesCountAsClosedPaths) {
  EXPECT_EQ(zigzagNumberOfOrdering(cycleDigraph(2), {0, 1}), 2u);
  ZigZagVerdict v = verifyZigZag(cycleDigraph(3), {0, 1, 2}, 1);
  ASSERT_FALSE(v.verified);
  EXPECT_EQ(v.pathVertices.front(), v.pathVertices.back());
  EXPECT_EQ(dvsn(cycleDigraph(2), {0, 1}), 1u);
}

TEST(ZigZag, BinaryTreeDfsOrdering) {
  Digraph d7 = bidirectedBinaryTree(7);
  Ordering dfs = dfsOrderingBidirectedTree(d7);
  EXPECT_EQ(dfs, (Ordering{0, 1, 3, 4, 2, 5, 6}));
  EXPECT_EQ(zigzagNumberOfOrdering(d7, dfs), 2u);
  // Cut before position 2: vertices 3, 4 and 2 all point back into {0, 1}.
  EXPECT_EQ(dvsn(d7, dfs), 3u);
  Digraph d3 = bidirectedBinaryTree(3);
  EXPECT_EQ(dfsOrderingBidirectedTree(d3), (Ordering{0, 1, 2}));
  EXPECT_EQ(zigzagNumberOfOrdering(d3, {0, 1, 2}), 2u);
  Digraph single(1);
  EXPECT_EQ(dfsOrderingBidirectedTree(single), Ordering{0});
  EXPECT_EQ(zigzagNumberOfOrdering(single, {0}), 0u);
  EXPECT_THROW(dfsOrderingBidirectedTree(cycleDigraph(3)), InvalidArgument);
}

TEST(Dvsn, DagIsZero) {
  SeededRng rng(23);
  for (int i = 0; i < 10; ++i) {
    Digraph g = randomDag(rng, 6, 0.5);
    auto r = searchMinDvsnOrdering(g);
    ASSERT_TRUE(r.ordering.has_value());
    EXPECT_EQ(r.value, 0u);
    EXPECT_EQ(dvsn(g, *r.ordering), 0u);
  }
}

TEST(Dvsn, SearchMatchesExhaustiveOrderings) {
  auto r = searchMinDvsnOrdering(cycleDigraph(2));
  EXPECT_EQ(r.value, 1u);
  Digraph d7 = bidirectedBinaryTree(7);
  auto t = searchMinDvsnOrdering(d7);
  ASSERT_TRUE(t.ordering.has_value());
  EXPECT_EQ(t.value, bruteMinDvsn(d7));
  EXPECT_EQ(dvsn(d7, *t.ordering), t.value);
  SeededRng rng(29);
  for (int i = 0; i < 15; ++i) {
    Digraph g = randomDigraph(rng, 6, 0.3);
    auto s = searchMinDvsnOrdering(g);
    EXPECT_EQ(s.value, bruteMinDvsn(g));
  }
}

TEST(Dvsn, BudgetExceeded) {
  auto r = searchMinDvsnOrdering(bidirectedComplete(5), 1);
  EXPECT_TRUE(r.budgetExceeded);
  EXPECT_FALSE(r.ordering.has_value());
}

TEST(Dvsn, ClaimedAndVerifiedBounds) {
  Digraph dag = pathDigraph(4);
  OrderedDigraph a = orderingFromDvsn(dag, identityOrdering(4));
  EXPECT_EQ(a.zigzagBound, 1u);
  EXPECT_EQ(a.status, BoundStatus::Claimed);
  OrderedDigraph b = orderingFromDvsn(cycleDigraph(2), {0, 1});
  EXPECT_EQ(b.zigzagBound, 3u);
  OrderedDigraph c = verifiedOrdering(cycleDigraph(2), {0, 1});
  EXPECT_EQ(c.zigzagBound, 2u);
  EXPECT_EQ(c.status, BoundStatus::Verified);
  Digraph d15 = bidirectedBinaryTree(15);
  Ordering dfs = dfsOrderingBidirectedTree(d15);
  EXPECT_EQ(orderingFromDvsn(d15, dfs).zigzagBound, 2 * dvsn(d15, dfs) + 1);
  EXPECT_EQ(verifiedOrdering(d15, dfs).zigzagBound, 2u);
}

TEST(Dvsn, ZigZagWithinTwiceDvsnPlusOneAndCutWidth) {
  SeededRng rng(31);
  for (int i = 0; i < 40; ++i) {
    Digraph g = randomDigraph(rng, 2 + rng.below(5), 0.35);
    Ordering o = identityOrdering(g.vertexCount());
    for (std::size_t j = o.size(); j > 1; --j) std::swap(o[j - 1], o[rng.below(j)]);
    const std::size_t zz = zigzagNumberOfOrdering(g, o);
    EXPECT_LE(zz, 2 * dvsn(g, o) + 1);
    EXPECT_LE(zz, cutWidth(g, o));
  }
}

}  // namespace
}  // namespace slicecount
