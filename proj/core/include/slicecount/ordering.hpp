#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "slicecount/digraph.hpp"

namespace slicecount {

enum class BoundStatus { Claimed, Verified };

struct OrderedDigraph {
  Digraph graph;
  Ordering ordering;
  std::optional<std::size_t> zigzagBound;
  BoundStatus status = BoundStatus::Claimed;
};

struct ZigZagVerdict {
  bool verified = true;
  // Violating simple path, when !verified.
  std::vector<VertexId> pathVertices;
  std::vector<EdgeId> pathEdges;
  // The cut (1-based prefix length) crossed more than z times.
  std::size_t cut = 0;
};

// Exhaustive DFS over directed simple paths with per-cut crossing counters. A
// simple cycle counts as a closed path; its counterexample repeats the first vertex.
ZigZagVerdict verifyZigZag(const Digraph& g, const Ordering& ordering, std::size_t z);
// Maximum over simple paths and cycles and cuts of the number of crossings.
std::size_t zigzagNumberOfOrdering(const Digraph& g, const Ordering& ordering);

// max over cuts of the number of vertices after the cut with an out-edge before it.
std::size_t dvsn(const Digraph& g, const Ordering& ordering);

struct DvsnSearchResult {
  std::optional<Ordering> ordering;  // empty iff the budget was exceeded
  std::size_t value = 0;             // d*, or the budget when exceeded
  bool budgetExceeded = false;
};

// Exact minimum by iterative deepening over prefix sets; ascending-id tie-break.
DvsnSearchResult searchMinDvsnOrdering(const Digraph& g,
                                       std::optional<std::size_t> budget = std::nullopt);

// Bound 2*dvsn+1, status Claimed.
OrderedDigraph orderingFromDvsn(const Digraph& g, const Ordering& ordering);
// Bound = zigzagNumberOfOrdering, status Verified.
OrderedDigraph verifiedOrdering(const Digraph& g, const Ordering& ordering);

// Preorder from vertex 0, children in ascending id. Throws InvalidArgument unless g
// is the bidirected version of a tree.
Ordering dfsOrderingBidirectedTree(const Digraph& g);

}  // namespace slicecount
