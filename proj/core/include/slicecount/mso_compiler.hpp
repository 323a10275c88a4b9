#pragma once

#include "slicecount/formula.hpp"
#include "slicecount/micro_dfa.hpp"
#include "slicecount/slice_automaton.hpp"
#include "slicecount/slice_graph.hpp"

namespace slicecount {

struct CompileOptions {
  // Closed macros use the hand-built automata; otherwise their library text is
  // compiled like any other formula.
  bool nativeMacros = true;
  MicroLimits limits;
  std::size_t sliceStateCap = std::size_t{1} << 22;
};

// Letters for the labels mentioned by phi, at width c.
MicroLetters lettersFor(const FormulaPtr& phi, std::size_t c);

// Micro automaton of one atom. Correct on markings where every variable marks
// either all segments of an edge or none of them.
MicroDfa atomicAutomaton(const Formula& atom, const MicroLetters& letters, const MicroLimits& limits = {});
// Accepts exactly the markings of `var` that are consistent along every edge
// and never mark a separator.
MicroDfa representationAutomaton(const std::string& var, const MicroLetters& letters,
                                 const MicroLimits& limits = {});
// Accepts the words that spell a sequence of unit symbols whose consecutive
// frontiers agree. Compiled languages are only meaningful on these words.
MicroDfa validityAutomaton(const MicroLetters& letters, const MicroLimits& limits = {});
// Structural compilation; macros are expanded. Free variables stay as tracks.
MicroDfa compileMicro(const FormulaPtr& phi, const MicroLetters& letters, const CompileOptions& options = {});

// Slice automaton running a closed micro automaton symbol by symbol.
AutomatonPtr makeMicroAutomaton(AlphabetPtr alphabet, MicroDfa dfa, MicroLetters letters);

// Closed phi to a slice automaton; boolean structure between closed parts is
// combined at the slice level. Does not check gluing or width.
AutomatonPtr compileFormula(const FormulaPtr& phi, AlphabetPtr alphabet, std::size_t c,
                            const CompileOptions& options = {});
// compileFormula restricted to glueable strings of width <= c.
AutomatonPtr compileSentence(const FormulaPtr& phi, AlphabetPtr alphabet, std::size_t c,
                             const CompileOptions& options = {});

AutomatonPtr zigzagFormulaAutomaton(std::size_t z, AlphabetPtr alphabet, std::size_t c,
                                    const CompileOptions& options = {});
AutomatonPtr unitableFormulaAutomaton(std::size_t k, AlphabetPtr alphabet, std::size_t c,
                                      const CompileOptions& options = {});

// phi ∧ ZigZag(z) ∧ Unitable(k) over glueable strings of width <= k·z. The
// zig-zag conjunct can be left out when the caller knows it holds.
AutomatonPtr saturatedAutomaton(const FormulaPtr& phi, std::size_t k, std::size_t z, AlphabetPtr alphabet,
                                const CompileOptions& options = {}, bool includeZigZag = true);

// Slice graph of saturatedAutomaton over the symbols currently in `alphabet`:
// one vertex per reachable (state, symbol), trimmed and minimized.
SliceGraph buildSaturatedSliceGraph(const FormulaPtr& phi, std::size_t k, std::size_t z, AlphabetPtr alphabet,
                                    const CompileOptions& options = {});
// Slice graph of an arbitrary automaton over the alphabet's current symbols.
SliceGraph automatonSliceGraph(SliceAutomaton& automaton, std::size_t c);

}  // namespace slicecount
