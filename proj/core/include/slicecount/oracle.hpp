#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "slicecount/digraph.hpp"
#include "slicecount/formula.hpp"

// Brute-force ground truth. Shares no code with the automaton engine.
namespace slicecount::oracle {

struct Limits {
  std::size_t maxVertices = 8;
  std::size_t maxEdgeSubsetBits = 24;  // edges inside one vertex subset
  std::size_t maxElements = 62;        // vertices + edges seen by modelCheck
  std::size_t maxPaths = std::size_t{1} << 22;
};

struct Subgraph {
  std::vector<VertexId> vertices;  // ascending
  std::vector<EdgeId> edges;       // ascending
};

// Every (vertex set, edge set) with edges inside the vertex set and exactly l
// vertices (any size when l is empty). Throws ResourceError above the caps.
void enumerateSubgraphs(const Digraph& g, std::optional<std::size_t> l,
                        const std::function<void(const Subgraph&)>& visit, const Limits& limits = {});
std::vector<Subgraph> listSubgraphs(const Digraph& g, std::optional<std::size_t> l, const Limits& limits = {});

// The subgraph as a digraph; vertices and edges keep their relative order.
Digraph extract(const Digraph& g, const Subgraph& h);
Weight subgraphWeight(const Digraph& g, const Subgraph& h);

// Position of every vertex in a vertex ordering; frontier atoms and the zig-zag
// macro need it.
using Positions = std::vector<std::size_t>;

// Evaluates phi on g quantifying over all element subsets. Free variables are
// not allowed.
bool modelCheck(const Digraph& g, const FormulaPtr& phi, const Positions* positions = nullptr,
                const Limits& limits = {});

bool isConnected(const Digraph& g);
bool isForest(const Digraph& g);
bool isBipartite(const Digraph& g);
bool isHamiltonianCycle(const Digraph& g);
bool isUnionOfKPaths(const Digraph& g, std::size_t k, const Limits& limits = {});
// Largest number of edges of one directed simple path or cycle crossing one cut.
std::size_t maxPathCrossings(const Digraph& g, const Positions& positions, const Limits& limits = {});

struct Query {
  FormulaPtr formula;
  std::size_t k = 1;
  std::size_t z = 1;
  std::optional<std::size_t> l;
  bool maximal = false;
  std::optional<std::size_t> witnessCap;
};

struct Result {
  std::uint64_t count = 0;  // satisfying subgraphs, or those of maximal weight
  std::uint64_t satisfying = 0;
  std::optional<Weight> maxWeight;
  std::vector<Subgraph> witnesses;
};

// Subgraphs H of g with l vertices satisfying formula ∧ Unitable(k) ∧ ZigZag(z)
// (the latter under the induced ordering).
Result count(const Digraph& g, const Ordering& ordering, const Query& query, const Limits& limits = {});

}  // namespace slicecount::oracle
