#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace slicecount {

enum class AtomKind {
  Vertices,              // (V X): X holds only vertices
  Edges,                 // (E X): X holds only edges
  Singleton,             // (singleton X)
  Subset,                // (subset X Y)
  Source,                // (src X Y): X = {e}, Y = {v}, v is the source of e
  Target,                // (tgt X Y)
  VertexLabel,           // (vlabel X a): every member of X is a vertex labeled a
  EdgeLabel,             // (elabel X b): every member of X is an edge labeled b
  Frontier,              // (frontier X): X = {e}, e crosses a cut of the decomposition
  SameFrontier,          // (same-frontier X Y): single edges crossing a common cut
  ConsecutiveFrontiers,  // (consecutive-frontiers X Y): frontier X and X = Y
};

enum class MacroKind {
  Path,              // (path X Y): X, Y are the vertices and edges of a directed simple path
  PathVertices,      // (path-vertices X)
  PathEdges,         // (path-edges Y)
  ZigZag,            // (zigzag z)
  Unitable,          // (unitable k)
  HamiltonianCycle,  // (hamiltonian-cycle)
  Connected,         // (connected)
  Forest,            // (forest)
  Bipartite,         // (bipartite)
};

enum class FormulaKind { True, False, Not, And, Or, Exists, Atom, Macro };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable MSO2 syntax node. Universal quantifiers and implications are
// desugared by the parser.
struct Formula {
  FormulaKind kind = FormulaKind::True;
  AtomKind atom = AtomKind::Vertices;
  MacroKind macro = MacroKind::Connected;
  // Atom/macro arguments, or the single bound variable of Exists.
  std::vector<std::string> vars;
  std::string symbol;  // label of vlabel/elabel
  int parameter = 0;   // z of zigzag, k of unitable
  std::vector<FormulaPtr> children;
};

namespace fml {
FormulaPtr truth();
FormulaPtr falsity();
FormulaPtr negate(FormulaPtr f);
FormulaPtr conj(std::vector<FormulaPtr> fs);
FormulaPtr disj(std::vector<FormulaPtr> fs);
FormulaPtr exists(std::string var, FormulaPtr body);
FormulaPtr forall(std::string var, FormulaPtr body);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr atom(AtomKind kind, std::vector<std::string> vars, std::string symbol = {});
FormulaPtr macro(MacroKind kind, std::vector<std::string> vars = {}, int parameter = 0);
}  // namespace fml

// Parses one sentence of the s-expression DSL. `freeVariables` may occur unbound.
// Binders are renamed apart from each other and from the free variables.
FormulaPtr parseFormula(const std::string& text, const std::vector<std::string>& freeVariables = {});
FormulaPtr loadFormula(const std::string& path);
std::string formatFormula(const FormulaPtr& f);

std::set<std::string> freeVariables(const FormulaPtr& f);
bool containsMacro(const FormulaPtr& f);
// Labels mentioned by vlabel / elabel atoms.
std::set<std::string> mentionedVertexLabels(const FormulaPtr& f);
std::set<std::string> mentionedEdgeLabels(const FormulaPtr& f);
std::size_t formulaSize(const FormulaPtr& f);

// Library definitions of the macros as DSL text.
std::string macroDefinitionText(MacroKind kind, int parameter = 0);
const char* macroName(MacroKind kind);
const char* atomName(AtomKind kind);
// Arity of the variable arguments.
std::size_t macroArity(MacroKind kind);
std::size_t atomArity(AtomKind kind);

// Replaces every macro node by its library definition, recursively.
FormulaPtr expandMacros(const FormulaPtr& f);

}  // namespace slicecount
