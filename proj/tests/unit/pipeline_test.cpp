#include <gtest/gtest.h>

#include <algorithm>

#include "slicecount/errors.hpp"
#include "slicecount/generators.hpp"
#include "slicecount/pipeline.hpp"

namespace slicecount {
namespace {

OrderedDigraph ordered(const Digraph& g, Ordering o = {}) {
  if (o.empty()) o = identityOrdering(g.vertexCount());
  return OrderedDigraph{g, o, std::nullopt, BoundStatus::Claimed};
}

BigCount hamiltonian(const Digraph& g, std::size_t z, Ordering o = {}) {
  return countSubgraphs(presetQuery("hamiltonian", ordered(g, std::move(o)), 2, z, std::nullopt)).count;
}

TEST(Pipeline, HamiltonianCycles) {
  Digraph k4 = bidirectedComplete(4);
  EXPECT_EQ(hamiltonian(k4, 4), 6);
  // Two of the six cycles cross the middle cut four times.
  EXPECT_EQ(hamiltonian(k4, 2), 4);
  EXPECT_EQ(hamiltonian(cycleDigraph(2), 2), 1);
  EXPECT_EQ(hamiltonian(cycleDigraph(5), 2), 1);
  EXPECT_EQ(hamiltonian(pathDigraph(4), 4), 0);
  SeededRng rng(101);
  EXPECT_EQ(hamiltonian(randomDag(rng, 5, 0.6), 3), 0);
}

TEST(Pipeline, SmallPresets) {
  OrderedDigraph edge = ordered(pathDigraph(2));
  // Empty, either vertex, both vertices with or without the edge. Two
  // isolated vertices need a second path.
  EXPECT_EQ(countSubgraphs(presetQuery("forest", edge, 2, 1, std::nullopt)).count, 5);
  EXPECT_EQ(countSubgraphs(presetQuery("forest", edge, 2, 1, 2)).count, 2);
  EXPECT_EQ(countSubgraphs(presetQuery("forest", edge, 1, 1, std::nullopt)).count, 4);
  EXPECT_EQ(countSubgraphs(presetQuery("forest", edge, 1, 1, 2)).count, 1);
  EXPECT_EQ(countSubgraphs(presetQuery("connectedSpanning", edge, 1, 1, std::nullopt)).count, 1);
  EXPECT_GE(countSubgraphs(presetQuery("bipartite", ordered(cycleDigraph(2)), 2, 2, 2)).count, 1);
  EXPECT_THROW(presetQuery("nonsense", edge, 1, 1, std::nullopt), InvalidArgument);
}

TEST(Pipeline, AgreesWithOracleOnSmallDigraphs) {
  SeededRng rng(103);
  const auto& presets = presetNames();
  for (int i = 0; i < 24; ++i) {
    Digraph g = randomDigraph(rng, 2 + rng.below(4), 0.35);
    const std::string& preset = presets[static_cast<std::size_t>(i) % presets.size()];
    const std::size_t k = 1 + rng.below(2), z = 1 + rng.below(2);
    std::optional<std::size_t> l;
    if (i % 3 == 0) l = rng.below(g.vertexCount() + 1);
    CountQuery q = presetQuery(preset, ordered(g), k, z, l);
    EXPECT_EQ(countSubgraphs(q).count, oracleCount(q).count) << preset << " k=" << k << " z=" << z << "\n"
                                                                << formatDigraph(g);
  }
}

TEST(Pipeline, EveryThreeVertexDigraph) {
  // All 2^6 loopless edge sets on three vertices.
  std::vector<std::pair<VertexId, VertexId>> arcs;
  for (VertexId u = 0; u < 3; ++u)
    for (VertexId v = 0; v < 3; ++v)
      if (u != v) arcs.emplace_back(u, v);
  for (unsigned mask = 0; mask < 64; ++mask) {
    Digraph g(3);
    for (std::size_t b = 0; b < arcs.size(); ++b)
      if ((mask >> b) & 1u) g.addEdge(arcs[b].first, arcs[b].second);
    CountQuery q = presetQuery("connectedSpanning", ordered(g), 2, 2, std::nullopt);
    EXPECT_EQ(countSubgraphs(q).count, oracleCount(q).count) << formatDigraph(g);
  }
}

TEST(Pipeline, OrderingIndependentOnceZCoversTheCutWidth) {
  Digraph g = bidirectedComplete(4);
  Ordering o = identityOrdering(4);
  const BigCount expected = hamiltonian(g, 8);
  do EXPECT_EQ(hamiltonian(g, 8, o), expected);
  while (std::next_permutation(o.begin() + 1, o.end()));
}

TEST(Pipeline, MonotoneInZ) {
  SeededRng rng(107);
  for (int i = 0; i < 5; ++i) {
    Digraph g = randomDigraph(rng, 4, 0.45);
    BigCount previous = 0;
    for (std::size_t z = 1; z <= 3; ++z) {
      BigCount now = countSubgraphs(presetQuery("forest", ordered(g), 2, z, std::nullopt)).count;
      EXPECT_GE(now, previous);
      previous = now;
    }
  }
}

TEST(Pipeline, StagedMatchesFused) {
  SeededRng rng(109);
  for (int i = 0; i < 6; ++i) {
    Digraph g = randomDigraph(rng, 3 + rng.below(2), 0.4);
    CountQuery q = presetQuery(i % 2 ? "bipartite" : "forest", ordered(g), 2, 2, std::nullopt);
    const BigCount fused = countSubgraphs(q).count;
    q.staged = true;
    EXPECT_EQ(countSubgraphs(q).count, fused);
  }
}

TEST(Pipeline, MaximalWeight) {
  Digraph g(3, WeightSemigroup::boundedSum(10));
  g.addEdge(0, 1, kDefaultLabel, 2);
  g.addEdge(1, 2, kDefaultLabel, 3);
  g.addEdge(0, 2, kDefaultLabel, 4);
  CountQuery q = presetQuery("forest", ordered(g), 2, 2, std::nullopt);
  q.maximal = true;
  q.witnessCap = 8;
  CountResult r = countSubgraphs(q);
  OracleCount o = oracleCount(q);
  EXPECT_EQ(r.count, o.count);
  ASSERT_TRUE(r.maxWeight.has_value());
  EXPECT_EQ(r.maxWeight, o.maxWeight);
  // Any two of the three edges form a forest; 3 + 4 is the heaviest pair.
  EXPECT_EQ(*r.maxWeight, 7u);
}

TEST(Audit, PassesAndCatchesCorruption) {
  CountQuery q = presetQuery("hamiltonian", ordered(bidirectedComplete(4)), 2, 4, std::nullopt);
  q.witnessCap = 10;
  CountResult r = countSubgraphs(q);
  ASSERT_EQ(r.witnesses.size(), 6u);
  AuditReport ok = auditWitnesses(r, q);
  EXPECT_TRUE(ok.passed);
  EXPECT_EQ(ok.checked, 6u);
  CountResult none = r;
  none.witnesses.clear();
  EXPECT_TRUE(auditWitnesses(none, q).passed);
  CountResult broken = r;
  broken.witnesses[0].edges.pop_back();
  AuditReport bad = auditWitnesses(broken, q);
  EXPECT_FALSE(bad.passed);
  ASSERT_FALSE(bad.failures.empty());
  EXPECT_NE(bad.failures[0].find("witness 0"), std::string::npos);
}

TEST(Pipeline, RejectsMalformedQueries) {
  CountQuery q = presetQuery("forest", ordered(pathDigraph(3)), 1, 1, std::nullopt);
  q.graph.ordering = {0, 0, 1};
  EXPECT_THROW(countSubgraphs(q), InvalidArgument);
  q = presetQuery("forest", ordered(pathDigraph(3)), 0, 1, std::nullopt);
  EXPECT_THROW(countSubgraphs(q), InvalidArgument);
}

TEST(Corpus, IsStableForASeed) {
  auto a = bundledCorpus(kDefaultSeed, 10), b = bundledCorpus(kDefaultSeed, 10);
  ASSERT_EQ(a.size(), 10u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(formatDigraph(a[i].query.graph.graph), formatDigraph(b[i].query.graph.graph));
  }
}

}  // namespace
}  // namespace slicecount
