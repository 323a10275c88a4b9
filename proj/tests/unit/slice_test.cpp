#include <gtest/gtest.h>

#include "slicecount/decomposition.hpp"
#include "slicecount/errors.hpp"
#include "slicecount/generators.hpp"
#include "slicecount/slice.hpp"

namespace slicecount {
namespace {

// Center with an edge from in-frontier 1 and an edge to out-frontier 1.
Slice passThrough() {
  Slice s;
  auto i = s.addIn(1);
  auto c = s.addCenter();
  auto o = s.addOut(1);
  s.addEdge(i, c);
  s.addEdge(c, o);
  return s;
}

Slice sourceEnd() {
  Slice s;
  auto c = s.addCenter();
  auto o = s.addOut(1);
  s.addEdge(c, o);
  return s;
}

Slice targetEnd() {
  Slice s;
  auto i = s.addIn(1);
  auto c = s.addCenter();
  s.addEdge(i, c);
  return s;
}

bool sameEdges(const Digraph& a, const Digraph& b) {
  if (a.vertexCount() != b.vertexCount() || a.edgeCount() != b.edgeCount()) return false;
  for (EdgeId e = 0; e < a.edgeCount(); ++e)
    if (a.edge(e).source != b.edge(e).source || a.edge(e).target != b.edge(e).target) return false;
  return true;
}

TEST(Slice, Validation) {
  EXPECT_NO_THROW(passThrough().validate());
  Slice dangling;
  dangling.addIn(1);
  EXPECT_THROW(dangling.validate(), InvalidArgument);
  Slice inside;
  auto a = inside.addIn(1), b = inside.addIn(2);
  inside.addEdge(a, b);
  EXPECT_THROW(inside.validate(), InvalidArgument);
}

TEST(Slice, Gluing) {
  EXPECT_TRUE(canGlue(Slice{}, Slice{}));
  EXPECT_TRUE(canGlue(sourceEnd(), targetEnd()));
  EXPECT_TRUE(canGlue(sourceEnd(), passThrough()));
  // The out edge points forward; an in edge pointing back into the in-frontier mismatches.
  Slice back;
  auto i = back.addIn(1);
  auto c = back.addCenter();
  back.addEdge(c, i);
  EXPECT_FALSE(canGlue(sourceEnd(), back));
  EXPECT_TRUE(canGlue(targetEnd(), sourceEnd()));
  EXPECT_FALSE(canGlue(sourceEnd(), Slice{}));
  EXPECT_THROW(compose(sourceEnd(), back), InvalidArgument);
}

TEST(Slice, ComposeSingleEdge) {
  Slice s = compose(sourceEnd(), targetEnd());
  EXPECT_EQ(s.centerCount(), 2u);
  EXPECT_EQ(s.edges().size(), 1u);
  EXPECT_TRUE(s.isInitial());
  EXPECT_TRUE(s.isFinal());
  Digraph g = sliceToDigraph(s);
  EXPECT_EQ(g.vertexCount(), 2u);
  ASSERT_EQ(g.edgeCount(), 1u);
  EXPECT_EQ(g.edge(0).source, 0u);
  EXPECT_EQ(g.edge(0).target, 1u);
}

TEST(Slice, DecomposeThenComposeIsIdentity) {
  SeededRng rng(41);
  for (int i = 0; i < 25; ++i) {
    Digraph g = randomDigraph(rng, 1 + rng.below(6), 0.35);
    Ordering o = identityOrdering(g.vertexCount());
    for (std::size_t j = o.size(); j > 1; --j) std::swap(o[j - 1], o[rng.below(j)]);
    UnitDecomposition u = decomposeAlongOrdering(g, o);
    EXPECT_NO_THROW(u.validate());
    EXPECT_EQ(u.slices.size(), g.vertexCount());
    EXPECT_EQ(u.q, cutWidth(g, o));
    EXPECT_TRUE(sameEdges(composeAll(u), g));
  }
}

TEST(Slice, DecompositionShapes) {
  UnitDecomposition single = decomposeAlongOrdering(Digraph(1), {0});
  ASSERT_EQ(single.slices.size(), 1u);
  EXPECT_EQ(single.slices[0].width(), 0u);
  UnitDecomposition path = decomposeAlongOrdering(pathDigraph(3), {0, 1, 2});
  ASSERT_EQ(path.slices.size(), 3u);
  for (const Slice& s : path.slices) EXPECT_LE(s.width(), 1u);
  EXPECT_EQ(decomposeAlongOrdering(Digraph(0), {}).slices.size(), 1u);
}

TEST(Slice, PlusThenContractEqualsCompose) {
  PlusStructure plus = oplus(sourceEnd(), targetEnd());
  EXPECT_EQ(plus.vertices.size(), 4u);
  EXPECT_EQ(plus.links.size(), 1u);
  SeededRng rng(43);
  for (int i = 0; i < 15; ++i) {
    Digraph g = randomDigraph(rng, 2 + rng.below(4), 0.4);
    UnitDecomposition u = decomposeAlongOrdering(g, identityOrdering(g.vertexCount()));
    EXPECT_TRUE(sameEdges(contractFrontierChains(oplusAll(u.slices)), g));
  }
}

TEST(Slice, SubSlices) {
  EXPECT_EQ(enumerateNumberedSubSlices(Slice{}, 1).size(), 1u);
  // Empty, center alone, center with either edge, center with both.
  EXPECT_EQ(enumerateNumberedSubSlices(passThrough(), 1).size(), 5u);
  Slice through;
  auto i = through.addIn(1), o = through.addOut(1);
  through.addEdge(i, o);
  EXPECT_EQ(enumerateNumberedSubSlices(through, 1).size(), 2u);
}

TEST(Slice, CanonicalFormIgnoresInsertionOrder) {
  Slice a;
  auto ai = a.addIn(1);
  auto ac = a.addCenter("x");
  auto ao = a.addOut(1);
  a.addEdge(ai, ac);
  a.addEdge(ac, ao);
  Slice b;
  auto bo = b.addOut(1);
  auto bc = b.addCenter("x");
  auto bi = b.addIn(1);
  b.addEdge(bc, bo);
  b.addEdge(bi, bc);
  EXPECT_EQ(canonicalForm(a), canonicalForm(b));
  EXPECT_NE(canonicalForm(a), canonicalForm(passThrough()));
  EXPECT_NE(canonicalForm(Slice{}), canonicalForm(passThrough()));
}

TEST(Slice, NumberingsAreDistinguished) {
  Slice one = sourceEnd();
  Slice three;
  auto c = three.addCenter();
  auto o = three.addOut(3);
  three.addEdge(c, o);
  EXPECT_NE(canonicalForm(one), canonicalForm(three));
  EXPECT_EQ(canonicalForm(normalize(three)), canonicalForm(one));
}

TEST(Slice, SerializationRoundTrip) {
  SeededRng rng(47);
  Digraph g = withRandomWeights(rng, bidirectedComplete(4), 5);
  UnitDecomposition u = decomposeAlongOrdering(g, {2, 0, 3, 1});
  for (const Slice& s : u.slices) {
    Slice t = parseSlice(serializeSlice(s));
    EXPECT_EQ(serializeSlice(t), serializeSlice(s));
    EXPECT_EQ(canonicalForm(t, {.origins = true}), canonicalForm(s, {.origins = true}));
  }
  UnitDecomposition v = parseDecomposition(serializeDecomposition(u));
  EXPECT_EQ(serializeDecomposition(v), serializeDecomposition(u));
  EXPECT_THROW(parseSlice("garbage"), ParseError);
}

TEST(Slice, PermutationSlicesKeepTheGraph) {
  Digraph g = cycleDigraph(4);
  UnitDecomposition u = decomposeAlongOrdering(g, {0, 2, 1, 3});
  auto numbers = cutNumbers(u, 2);
  std::vector<std::uint32_t> reversed(numbers.rbegin(), numbers.rend());
  UnitDecomposition d = insertPermutationSlice(u, 2, reversed);
  EXPECT_TRUE(d.dilated);
  EXPECT_EQ(d.slices.size(), u.slices.size() + 1);
  EXPECT_NO_THROW(d.validate());
  EXPECT_TRUE(sameEdges(composeAll(d), g));
  ASSERT_EQ(cutNumbers(u, 1).size(), 2u);
  UnitDecomposition r = renumberCut(u, 1, {3, 5});
  EXPECT_FALSE(r.normalized);
  EXPECT_TRUE(sameEdges(composeAll(r), g));
}

}  // namespace
}  // namespace slicecount
