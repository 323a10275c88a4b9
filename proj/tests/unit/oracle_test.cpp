#include <gtest/gtest.h>

#include "slicecount/errors.hpp"
#include "slicecount/generators.hpp"
#include "slicecount/oracle.hpp"

namespace slicecount {
namespace {

Digraph outStar(std::size_t leaves) {
  Digraph g(leaves + 1);
  for (VertexId v = 1; v <= leaves; ++v) g.addEdge(0, v);
  return g;
}

TEST(Enumerate, SmallCounts) {
  Digraph edge = pathDigraph(2);
  // With and without the edge.
  EXPECT_EQ(oracle::listSubgraphs(edge, 2).size(), 2u);
  EXPECT_EQ(oracle::listSubgraphs(edge, 0).size(), 1u);
  EXPECT_EQ(oracle::listSubgraphs(edge, std::nullopt).size(), 5u);
  Digraph triangle = cycleDigraph(3);
  EXPECT_EQ(oracle::listSubgraphs(triangle, 3).size(), 8u);
  // 1 + 3 + 3·2 + 8.
  EXPECT_EQ(oracle::listSubgraphs(triangle, std::nullopt).size(), 18u);
}

TEST(Enumerate, EdgesStayInsideTheVertexSet) {
  SeededRng rng(89);
  Digraph g = randomDigraph(rng, 5, 0.4);
  for (const auto& h : oracle::listSubgraphs(g, std::nullopt)) {
    for (EdgeId e : h.edges) {
      EXPECT_TRUE(std::binary_search(h.vertices.begin(), h.vertices.end(), g.edge(e).source));
      EXPECT_TRUE(std::binary_search(h.vertices.begin(), h.vertices.end(), g.edge(e).target));
    }
    EXPECT_EQ(oracle::extract(g, h).edgeCount(), h.edges.size());
  }
}

TEST(Enumerate, ResourceCap) {
  oracle::Limits tight;
  tight.maxVertices = 3;
  EXPECT_THROW(oracle::listSubgraphs(pathDigraph(4), std::nullopt, tight), ResourceError);
}

TEST(Predicates, Basics) {
  EXPECT_TRUE(oracle::isConnected(cycleDigraph(4)));
  Digraph split(3);
  split.addEdge(0, 1);
  EXPECT_FALSE(oracle::isConnected(split));
  EXPECT_TRUE(oracle::isForest(outStar(3)));
  EXPECT_FALSE(oracle::isForest(cycleDigraph(3)));
  // Antiparallel edges form a cycle of the underlying multigraph.
  EXPECT_FALSE(oracle::isForest(cycleDigraph(2)));
  EXPECT_TRUE(oracle::isBipartite(cycleDigraph(4)));
  EXPECT_FALSE(oracle::isBipartite(cycleDigraph(5)));
  EXPECT_TRUE(oracle::isHamiltonianCycle(cycleDigraph(5)));
  EXPECT_FALSE(oracle::isHamiltonianCycle(pathDigraph(5)));
}

TEST(Predicates, UnionOfPaths) {
  EXPECT_TRUE(oracle::isUnionOfKPaths(pathDigraph(5), 1));
  EXPECT_FALSE(oracle::isUnionOfKPaths(cycleDigraph(3), 1));
  EXPECT_TRUE(oracle::isUnionOfKPaths(cycleDigraph(3), 2));
  EXPECT_FALSE(oracle::isUnionOfKPaths(outStar(3), 2));
  EXPECT_TRUE(oracle::isUnionOfKPaths(outStar(3), 3));
  Digraph square = directedGrid(2, 2);
  EXPECT_FALSE(oracle::isUnionOfKPaths(square, 1));
  EXPECT_TRUE(oracle::isUnionOfKPaths(square, 2));
  EXPECT_TRUE(oracle::isUnionOfKPaths(Digraph(0), 1));
  Digraph loop(1);
  loop.addEdge(0, 0);
  EXPECT_FALSE(oracle::isUnionOfKPaths(loop, 3));
}

TEST(Predicates, PathCrossings) {
  EXPECT_EQ(oracle::maxPathCrossings(pathDigraph(4), positions(identityOrdering(4))), 1u);
  EXPECT_EQ(oracle::maxPathCrossings(cycleDigraph(2), positions({0, 1})), 2u);
  EXPECT_EQ(oracle::maxPathCrossings(cycleDigraph(4), positions({0, 2, 1, 3})), 4u);
  Digraph fig(4);
  fig.addEdge(0, 1);
  fig.addEdge(1, 2);
  fig.addEdge(2, 3);
  fig.addEdge(0, 3);
  fig.addEdge(3, 1);
  EXPECT_EQ(oracle::maxPathCrossings(fig, positions(identityOrdering(4))), 3u);
  EXPECT_EQ(oracle::maxPathCrossings(Digraph(3), positions(identityOrdering(3))), 0u);
}

TEST(ModelCheck, Sentences) {
  const FormulaPtr someVertex = parseFormula("(exists X (and (singleton X) (V X)))");
  EXPECT_TRUE(oracle::modelCheck(Digraph(1), someVertex));
  EXPECT_FALSE(oracle::modelCheck(Digraph(0), someVertex));
  const FormulaPtr loop = parseFormula(
      "(exists e (and (singleton e) (E e) (exists v (and (singleton v) (src e v) (tgt e v)))))");
  Digraph l(1);
  l.addEdge(0, 0);
  EXPECT_TRUE(oracle::modelCheck(l, loop));
  EXPECT_FALSE(oracle::modelCheck(cycleDigraph(2), loop));
  EXPECT_THROW(oracle::modelCheck(pathDigraph(2), fml::macro(MacroKind::ZigZag, {}, 1)), InvalidArgument);
}

TEST(ModelCheck, MacrosMatchPredicates) {
  SeededRng rng(97);
  for (int i = 0; i < 25; ++i) {
    Digraph g = randomDigraph(rng, 1 + rng.below(4), 0.35);
    EXPECT_EQ(oracle::modelCheck(g, fml::macro(MacroKind::Connected)), oracle::isConnected(g));
    EXPECT_EQ(oracle::modelCheck(g, fml::macro(MacroKind::Forest)), oracle::isForest(g));
  }
}

TEST(Count, K4HamiltonianCycles) {
  Digraph k4 = bidirectedComplete(4);
  oracle::Query q;
  q.formula = fml::macro(MacroKind::HamiltonianCycle);
  q.k = 2;
  q.l = 4;
  q.z = 4;
  EXPECT_EQ(oracle::count(k4, identityOrdering(4), q).count, 6u);
  q.z = 2;
  EXPECT_EQ(oracle::count(k4, identityOrdering(4), q).count, 4u);
}

TEST(Count, MaximalWeight) {
  Digraph g(3, WeightSemigroup::boundedSum(10));
  g.addEdge(0, 1, kDefaultLabel, 2);
  g.addEdge(1, 2, kDefaultLabel, 3);
  oracle::Query q;
  q.formula = parseFormula("(forest)");
  q.maximal = true;
  q.witnessCap = 4;
  oracle::Result r = oracle::count(g, identityOrdering(3), q);
  ASSERT_TRUE(r.maxWeight.has_value());
  EXPECT_EQ(*r.maxWeight, 5u);
  EXPECT_EQ(r.count, 1u);
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_EQ(r.witnesses[0].edges.size(), 2u);
}

}  // namespace
}  // namespace slicecount
