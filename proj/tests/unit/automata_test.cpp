#include <gtest/gtest.h>

#include "slicecount/decomposition.hpp"
#include "slicecount/errors.hpp"
#include "slicecount/generators.hpp"
#include "slicecount/mso_compiler.hpp"
#include "slicecount/native_automata.hpp"
#include "slicecount/oracle.hpp"

namespace slicecount {
namespace {

Digraph figureGraph() {
  Digraph g(4);
  g.addEdge(0, 1);
  g.addEdge(1, 2);
  g.addEdge(2, 3);
  g.addEdge(0, 3);
  g.addEdge(3, 1);
  return g;
}

Digraph twoDisjointEdges() {
  Digraph g(4);
  g.addEdge(0, 1);
  g.addEdge(2, 3);
  return g;
}

bool run(const FormulaPtr& phi, const Digraph& g, const Ordering& o, const CompileOptions& options = {}) {
  UnitDecomposition u = decomposeAlongOrdering(g, o);
  auto alphabet = std::make_shared<SliceAlphabet>();
  auto automaton = compileSentence(phi, alphabet, std::max<std::size_t>(u.width(), 1), options);
  return accepts(*automaton, u.slices);
}

Ordering shuffled(SeededRng& rng, std::size_t n) {
  Ordering o = identityOrdering(n);
  for (std::size_t j = n; j > 1; --j) std::swap(o[j - 1], o[rng.below(j)]);
  return o;
}

TEST(FormulaText, Parses) {
  FormulaPtr a = parseFormula("(exists X (V X))");
  ASSERT_EQ(a->kind, FormulaKind::Exists);
  EXPECT_EQ(a->children.at(0)->kind, FormulaKind::Atom);
  EXPECT_EQ(a->children.at(0)->atom, AtomKind::Vertices);
  FormulaPtr b = parseFormula("(and (hamiltonian-cycle) (unitable 2))");
  ASSERT_EQ(b->kind, FormulaKind::And);
  EXPECT_EQ(b->children.at(0)->macro, MacroKind::HamiltonianCycle);
  EXPECT_EQ(b->children.at(1)->macro, MacroKind::Unitable);
  EXPECT_EQ(b->children.at(1)->parameter, 2);
  EXPECT_EQ(formatFormula(parseFormula(formatFormula(b))), formatFormula(b));
}

TEST(FormulaText, Errors) {
  EXPECT_THROW(parseFormula("(exists X (V X)"), ParseError);
  EXPECT_THROW(parseFormula("(frobnicate X)"), ParseError);
  EXPECT_THROW(parseFormula("(V X)"), ParseError);
  EXPECT_NO_THROW(parseFormula("(V X)", {"X"}));
}

TEST(FormulaText, EdgelessSentence) {
  FormulaPtr edgeless = parseFormula("(not (exists X (and (singleton X) (E X))))");
  EXPECT_TRUE(oracle::modelCheck(Digraph(3), edgeless));
  EXPECT_FALSE(oracle::modelCheck(pathDigraph(2), edgeless));
  EXPECT_TRUE(run(edgeless, Digraph(3), {0, 1, 2}));
  EXPECT_FALSE(run(edgeless, pathDigraph(2), {0, 1}));
}

TEST(NativeMacros, AgreeWithOracleOnRandomGraphs) {
  SeededRng rng(71);
  const std::vector<std::pair<MacroKind, bool (*)(const Digraph&)>> macros{
      {MacroKind::Connected, oracle::isConnected},
      {MacroKind::Forest, oracle::isForest},
      {MacroKind::Bipartite, oracle::isBipartite},
      {MacroKind::HamiltonianCycle, oracle::isHamiltonianCycle}};
  for (int i = 0; i < 60; ++i) {
    Digraph g = randomDigraph(rng, 1 + rng.below(5), 0.3 + 0.1 * static_cast<double>(i % 3));
    if (i % 7 == 0) g = cycleDigraph(2 + rng.below(4));
    Ordering o = shuffled(rng, g.vertexCount());
    for (const auto& [kind, truth] : macros)
      EXPECT_EQ(run(fml::macro(kind), g, o), truth(g)) << macroName(kind) << " on " << formatDigraph(g);
  }
}

TEST(Unitable, PathsAndCycles) {
  FormulaPtr one = fml::macro(MacroKind::Unitable, {}, 1);
  FormulaPtr two = fml::macro(MacroKind::Unitable, {}, 2);
  EXPECT_TRUE(run(one, pathDigraph(4), {0, 1, 2, 3}));
  EXPECT_FALSE(run(one, cycleDigraph(3), {0, 1, 2}));
  EXPECT_TRUE(run(two, cycleDigraph(3), {0, 1, 2}));
  EXPECT_FALSE(run(one, twoDisjointEdges(), {0, 1, 2, 3}));
  EXPECT_TRUE(run(two, twoDisjointEdges(), {0, 2, 1, 3}));
  Digraph loop(1);
  loop.addEdge(0, 0);
  EXPECT_FALSE(run(two, loop, {0}));
}

TEST(Unitable, AgreesWithOracle) {
  SeededRng rng(73);
  for (int i = 0; i < 40; ++i) {
    Digraph g = randomDigraph(rng, 1 + rng.below(5), 0.3);
    Ordering o = shuffled(rng, g.vertexCount());
    for (std::size_t k = 1; k <= 2; ++k)
      EXPECT_EQ(run(fml::macro(MacroKind::Unitable, {}, static_cast<int>(k)), g, o), oracle::isUnionOfKPaths(g, k));
  }
}

TEST(ZigZagAutomaton, FigureDecomposition) {
  Digraph g = figureGraph();
  EXPECT_FALSE(run(fml::macro(MacroKind::ZigZag, {}, 2), g, {0, 1, 2, 3}));
  EXPECT_TRUE(run(fml::macro(MacroKind::ZigZag, {}, 3), g, {0, 1, 2, 3}));
}

TEST(ZigZagAutomaton, ClosedCycles) {
  EXPECT_FALSE(run(fml::macro(MacroKind::ZigZag, {}, 1), cycleDigraph(2), {0, 1}));
  EXPECT_TRUE(run(fml::macro(MacroKind::ZigZag, {}, 2), cycleDigraph(2), {0, 1}));
  EXPECT_FALSE(run(fml::macro(MacroKind::ZigZag, {}, 3), cycleDigraph(4), {0, 2, 1, 3}));
  EXPECT_TRUE(run(fml::macro(MacroKind::ZigZag, {}, 4), cycleDigraph(4), {0, 2, 1, 3}));
}

TEST(ZigZagAutomaton, NativeCompiledAndOracleAgree) {
  auto alphabet = std::make_shared<SliceAlphabet>();
  CompileOptions compiled;
  compiled.nativeMacros = false;
  std::vector<AutomatonPtr> native, viaFormula;
  for (int z = 1; z <= 2; ++z) {
    native.push_back(compileSentence(fml::macro(MacroKind::ZigZag, {}, z), alphabet, 2));
    viaFormula.push_back(compileSentence(fml::macro(MacroKind::ZigZag, {}, z), alphabet, 2, compiled));
  }
  SeededRng rng(79);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 40; ++i) {
    Digraph g = randomDigraph(rng, 2 + rng.below(3), 0.35);
    Ordering o = shuffled(rng, g.vertexCount());
    if (cutWidth(g, o) > 2) continue;
    ++checked;
    UnitDecomposition u = decomposeAlongOrdering(g, o);
    oracle::Positions pos = positions(o);
    const std::size_t truth = oracle::maxPathCrossings(g, pos);
    for (int z = 1; z <= 2; ++z) {
      const bool expected = truth <= static_cast<std::size_t>(z);
      EXPECT_EQ(accepts(*native[z - 1], u.slices), expected) << formatDigraph(g);
      EXPECT_EQ(accepts(*viaFormula[z - 1], u.slices), expected) << formatDigraph(g);
      EXPECT_EQ(oracle::modelCheck(g, fml::macro(MacroKind::ZigZag, {}, z), &pos), expected);
    }
  }
  EXPECT_EQ(checked, 40);
}

TEST(BooleanStructure, MatchesOracle) {
  const FormulaPtr phi = parseFormula("(or (and (connected) (not (forest))) (not (bipartite)))");
  SeededRng rng(83);
  for (int i = 0; i < 30; ++i) {
    Digraph g = randomDigraph(rng, 1 + rng.below(5), 0.35);
    EXPECT_EQ(run(phi, g, shuffled(rng, g.vertexCount())), oracle::modelCheck(g, phi));
  }
}

TEST(MicroCompiler, DoubleNegationAndValidity) {
  const FormulaPtr phi = parseFormula("(exists X (and (V X) (not (exists e (and (singleton e) (subset e X))))))");
  MicroLetters letters = lettersFor(phi, 2);
  MicroDfa a = compileMicro(phi, letters);
  MicroDfa b = compileMicro(fml::negate(fml::negate(phi)), letters);
  EXPECT_TRUE(microEquivalent(a, b));
  MicroDfa valid = validityAutomaton(letters);
  UnitDecomposition u = decomposeAlongOrdering(cycleDigraph(3), {0, 2, 1});
  std::vector<std::uint32_t> word;
  for (const Slice& s : u.slices) {
    auto w = letters.word(makeUnitView(s));
    word.insert(word.end(), w.begin(), w.end());
  }
  EXPECT_TRUE(microAccepts(valid, word));
  std::swap(word[1], word[2]);
  EXPECT_FALSE(microAccepts(valid, word));
}

TEST(Compiler, RejectsFreeVariables) {
  auto alphabet = std::make_shared<SliceAlphabet>();
  EXPECT_THROW(compileFormula(parseFormula("(V X)", {"X"}), alphabet, 1), InvalidArgument);
}

}  // namespace
}  // namespace slicecount
