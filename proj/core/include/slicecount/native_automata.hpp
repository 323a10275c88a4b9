#pragma once

#include "slicecount/formula.hpp"
#include "slicecount/slice_automaton.hpp"

namespace slicecount {

// Hand-built automata for the closed macros. Each reads normalized unit symbols
// and assumes the string glues; pair with makeGluing for validity.

// Disorientation connected (the empty graph counts as connected).
AutomatonPtr makeConnected(AlphabetPtr alphabet);
// Disorientation acyclic as a multigraph: no loop, no parallel or antiparallel pair.
AutomatonPtr makeForest(AlphabetPtr alphabet);
// Disorientation 2-colorable; a loop is an odd cycle.
AutomatonPtr makeBipartite(AlphabetPtr alphabet);
// At least one vertex, and every vertex has in-degree 1 and out-degree 1.
AutomatonPtr makeDegreeOneOne(AlphabetPtr alphabet);
// A single directed cycle through every vertex.
AutomatonPtr makeHamiltonianCycle(AlphabetPtr alphabet);
// No directed simple path or cycle has more than z edges crossing one cut.
AutomatonPtr makeZigZag(AlphabetPtr alphabet, std::size_t z);
// The graph is the union of at most k directed simple paths.
AutomatonPtr makeUnitable(AlphabetPtr alphabet, std::size_t k);

// Native automaton of a closed macro. Throws InvalidArgument for path macros.
AutomatonPtr makeMacroAutomaton(AlphabetPtr alphabet, MacroKind kind, int parameter);

}  // namespace slicecount
