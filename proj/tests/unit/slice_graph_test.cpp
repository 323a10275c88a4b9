#include <gtest/gtest.h>

#include <functional>

#include "slicecount/decomposition.hpp"
#include "slicecount/errors.hpp"
#include "slicecount/generators.hpp"
#include "slicecount/oracle.hpp"
#include "slicecount/slice_graph.hpp"

namespace slicecount {
namespace {

Slice labelWithFrontiers(std::uint32_t in, std::uint32_t out) {
  Slice s;
  auto c = s.addCenter();
  for (std::uint32_t i = 1; i <= in; ++i) s.addEdge(s.addIn(i), c);
  for (std::uint32_t o = 1; o <= out; ++o) s.addEdge(c, s.addOut(o));
  return s;
}

// Accepting walks by plain DFS, independent of the counting code.
std::uint64_t walkCount(const SliceGraph& sg) {
  std::function<std::uint64_t(std::uint32_t)> from = [&](std::uint32_t v) {
    std::uint64_t n = sg.isFinal(v) ? 1 : 0;
    for (auto w : sg.successors(v)) n += from(w);
    return n;
  };
  std::uint64_t total = 0;
  for (auto v : sg.initials()) total += from(v);
  return total;
}

// Host labels already carry their weights.
std::vector<Slice> asIs(const Slice& s) { return {s}; }

// A DAG as a slice graph in which every vertex has its own label.
SliceGraph dagAsSliceGraph(const Digraph& g) {
  SliceGraph sg(0, 0);
  for (VertexId v = 0; v < g.vertexCount(); ++v) {
    Slice s;
    s.addCenter("v" + std::to_string(v));
    sg.addVertex(sg.internLabel(s));
    sg.setInitial(v, g.inEdges(v).empty());
    sg.setFinal(v, g.outEdges(v).empty());
  }
  for (const Edge& e : g.edges()) sg.addEdge(e.source, e.target);
  return sg;
}

TEST(SubSliceGraph, SingleEdgeHasFiveSubgraphs) {
  Digraph g = pathDigraph(2);
  SliceGraph sub = buildSubSliceGraph(decomposeAlongOrdering(g, {0, 1}), 1);
  EXPECT_EQ(countAcceptingPaths(sub), 5);
  EXPECT_TRUE(checkDeterministic(sub).deterministic);
  EXPECT_NO_THROW(sub.validate());
}

TEST(SubSliceGraph, IsolatedVertex) {
  SliceGraph sub = buildSubSliceGraph(decomposeAlongOrdering(Digraph(1), {0}), 3);
  EXPECT_EQ(countAcceptingPaths(sub), 2);
}

TEST(SubSliceGraph, SizeIsSumOfSubSliceCounts) {
  SeededRng rng(53);
  for (int i = 0; i < 10; ++i) {
    Digraph g = randomDigraph(rng, 2 + rng.below(4), 0.35);
    UnitDecomposition u = decomposeAlongOrdering(g, identityOrdering(g.vertexCount()));
    const std::size_t c = u.width();
    std::size_t expected = 0;
    for (const Slice& s : u.slices) expected += enumerateNumberedSubSlices(s, c).size();
    EXPECT_EQ(buildSubSliceGraph(u, c).vertexCount(), expected);
  }
}

TEST(SubSliceGraph, CountsAllSubgraphsAtFullWidth) {
  SeededRng rng(59);
  for (int i = 0; i < 15; ++i) {
    Digraph g = randomDigraph(rng, 1 + rng.below(5), 0.3);
    UnitDecomposition u = decomposeAlongOrdering(g, identityOrdering(g.vertexCount()));
    SliceGraph sub = buildSubSliceGraph(u, u.q);
    EXPECT_EQ(countAcceptingPaths(sub), oracle::listSubgraphs(g, std::nullopt).size());
    EXPECT_TRUE(sub.isAcyclic());
  }
}

TEST(NumberingExpansion, Copies) {
  SliceGraph plain(2, 2);
  plain.addVertex(plain.internLabel(Slice{}));
  EXPECT_EQ(numberingExpansion(plain, 3).vertexCount(), 1u);
  SliceGraph two(2, 2);
  two.addVertex(two.internLabel(labelWithFrontiers(2, 0)));
  EXPECT_EQ(numberingExpansion(two, 3).vertexCount(), 3u);
  EXPECT_THROW(numberingExpansion(two, 1), InvalidArgument);
}

TEST(NumberingExpansion, SingleEdgeGetsOneStringPerNumber) {
  SliceGraph sg(1, 1);
  auto a = sg.addVertex(sg.internLabel(labelWithFrontiers(0, 1)));
  auto b = sg.addVertex(sg.internLabel(labelWithFrontiers(1, 0)));
  sg.addEdge(a, b);
  sg.setInitial(a);
  sg.setFinal(b);
  SliceGraph wide = numberingExpansion(sg, 3);
  EXPECT_EQ(wide.vertexCount(), 6u);
  EXPECT_TRUE(checkDeterministic(wide).deterministic);
  EXPECT_EQ(countAcceptingPaths(wide), 3);
  Slice renumbered;
  auto c = renumbered.addCenter();
  renumbered.addEdge(c, renumbered.addOut(2));
  Slice end;
  auto d = end.addCenter();
  end.addEdge(end.addIn(2), d);
  EXPECT_TRUE(acceptsString(wide, {renumbered, end}));
  EXPECT_FALSE(acceptsString(sg, {renumbered, end}));
}

TEST(WeightExpansion, SingleEdgeTotal) {
  Digraph g(2, WeightSemigroup::boundedSum(3));
  g.addEdge(0, 1, kDefaultLabel, 2);
  UnitDecomposition u = decomposeAlongOrdering(g, {0, 1});
  SliceGraph sub = buildSubSliceGraph(u, 1);
  SliceGraph weighted = weightExpansion(sub, g.semigroup(), asIs);
  EXPECT_EQ(maximumFinalTotal(weighted), 2u);
  // Without a source every weighting is enumerated and the cap is reachable.
  EXPECT_EQ(maximumFinalTotal(weightExpansion(sub, g.semigroup())), 3u);
  EXPECT_TRUE(checkDeterministic(weighted).deterministic);
}

TEST(WeightExpansion, PathTotals) {
  Digraph g(3, WeightSemigroup::boundedSum(3));
  g.addEdge(0, 1, kDefaultLabel, 1);
  g.addEdge(1, 2, kDefaultLabel, 2);
  UnitDecomposition u = decomposeAlongOrdering(g, {0, 1, 2});
  SliceGraph weighted = weightExpansion(buildSubSliceGraph(u, 1), g.semigroup(), asIs);
  EXPECT_EQ(maximumFinalTotal(weighted), 3u);
  SliceGraph best = pruneNonMaximalFinals(weighted);
  // Only the full path reaches total 3.
  EXPECT_EQ(countAcceptingPaths(best), 1);
}

TEST(WeightExpansion, TrivialSemigroupKeepsTheLanguage) {
  Digraph g = bidirectedComplete(3);
  UnitDecomposition u = decomposeAlongOrdering(g, {0, 1, 2});
  SliceGraph sub = buildSubSliceGraph(u, u.q);
  EXPECT_EQ(countAcceptingPaths(weightExpansion(sub, WeightSemigroup::trivial())), countAcceptingPaths(sub));
}

TEST(CounterExpansion, VertexCounts) {
  UnitDecomposition u = decomposeAlongOrdering(pathDigraph(2), {0, 1});
  SliceGraph sub = buildSubSliceGraph(u, 1);
  EXPECT_EQ(countAcceptingPaths(counterExpansion(sub, 0)), 1);
  EXPECT_EQ(countAcceptingPaths(counterExpansion(sub, 1)), 2);
  EXPECT_EQ(countAcceptingPaths(counterExpansion(sub, 2)), 2);
  SeededRng rng(61);
  Digraph g = randomDigraph(rng, 4, 0.4);
  UnitDecomposition v = decomposeAlongOrdering(g, identityOrdering(4));
  SliceGraph all = buildSubSliceGraph(v, v.q);
  for (std::size_t l = 0; l <= 4; ++l) {
    SliceGraph counted = counterExpansion(all, l);
    EXPECT_TRUE(checkDeterministic(counted).deterministic);
    EXPECT_EQ(countAcceptingPaths(counted), oracle::listSubgraphs(g, l).size());
  }
}

TEST(Intersect, IdempotentAndEmpty) {
  Digraph g = cycleDigraph(3);
  UnitDecomposition u = decomposeAlongOrdering(g, {0, 1, 2});
  SliceGraph sub = buildSubSliceGraph(u, u.q);
  EXPECT_EQ(countAcceptingPaths(intersect(sub, sub)), countAcceptingPaths(sub));
  SliceGraph empty(sub.c(), sub.q());
  EXPECT_EQ(countAcceptingPaths(intersect(sub, empty)), 0);
}

TEST(PruneNonMaximalFinals, KeepsOnlyTheBest) {
  SliceGraph sg(0, 0);
  Slice a;
  a.addCenter("a");
  Slice b;
  b.addCenter("b");
  auto x = sg.addVertex(sg.internLabel(a), 1);
  auto y = sg.addVertex(sg.internLabel(b), 3);
  sg.setInitial(x), sg.setFinal(x), sg.setInitial(y), sg.setFinal(y);
  SliceGraph pruned = pruneNonMaximalFinals(sg);
  EXPECT_EQ(pruned.vertexCount(), 1u);
  EXPECT_EQ(maximumFinalTotal(pruned), 3u);
  sg = SliceGraph(0, 0);
  x = sg.addVertex(sg.internLabel(a), 2);
  y = sg.addVertex(sg.internLabel(b), 2);
  sg.setInitial(x), sg.setFinal(x), sg.setInitial(y), sg.setFinal(y);
  EXPECT_EQ(pruneNonMaximalFinals(sg).vertexCount(), 2u);
}

TEST(CountAcceptingPaths, Diamond) {
  Digraph diamond(4);
  diamond.addEdge(0, 1);
  diamond.addEdge(0, 2);
  diamond.addEdge(1, 3);
  diamond.addEdge(2, 3);
  EXPECT_EQ(countAcceptingPaths(dagAsSliceGraph(diamond)), 2);
  EXPECT_EQ(countAcceptingPaths(dagAsSliceGraph(Digraph(1))), 1);
}

TEST(CountAcceptingPaths, MatchesWalkEnumeration) {
  SeededRng rng(67);
  for (int i = 0; i < 20; ++i) {
    Digraph g = randomDag(rng, 12, 0.3);
    SliceGraph sg = dagAsSliceGraph(g);
    EXPECT_EQ(countAcceptingPaths(sg), walkCount(sg));
  }
}

TEST(CountAcceptingPaths, RejectsCyclesAndNondeterminism) {
  EXPECT_THROW(countAcceptingPaths(dagAsSliceGraph(cycleDigraph(2))), InvalidArgument);
  SliceGraph sg(0, 0);
  Slice a;
  a.addCenter("a");
  Slice b;
  b.addCenter("b");
  auto root = sg.addVertex(sg.internLabel(a));
  auto left = sg.addVertex(sg.internLabel(b));
  auto right = sg.addVertex(sg.internLabel(b));
  sg.addEdge(root, left);
  sg.addEdge(root, right);
  sg.setInitial(root);
  DeterminismReport r = checkDeterministic(sg);
  EXPECT_FALSE(r.deterministic);
  EXPECT_EQ(r.from, root);
  EXPECT_THROW(countAcceptingPaths(sg), InvalidArgument);
}

TEST(SliceGraphText, RoundTrip) {
  Digraph g(3, WeightSemigroup::boundedSum(2));
  g.addEdge(0, 1, kDefaultLabel, 1);
  g.addEdge(1, 2, kDefaultLabel, 2);
  UnitDecomposition u = decomposeAlongOrdering(g, {0, 1, 2});
  SliceGraph sg = counterExpansion(weightExpansion(buildSubSliceGraph(u, 1), g.semigroup(), asIs), 2);
  const std::string text = serializeSliceGraph(sg);
  SliceGraph back = parseSliceGraph(text);
  EXPECT_EQ(serializeSliceGraph(back), text);
  EXPECT_EQ(countAcceptingPaths(back), countAcceptingPaths(sg));
  EXPECT_THROW(parseSliceGraph("slicegraph 9\n"), ParseError);
}

}  // namespace
}  // namespace slicecount
