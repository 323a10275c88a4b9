#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slicecount/slice.hpp"

namespace slicecount {

struct UnitDecomposition {
  std::vector<Slice> slices;
  std::optional<Ordering> sourceOrdering;
  bool dilated = false;     // contains permutation slices
  bool normalized = true;   // every slice normalized
  std::size_t q = 0;        // frontier numbers are <= q
  WeightSemigroup omega;

  // Throws InvalidArgument on any violated decomposition invariant.
  void validate() const;
  std::size_t width() const;
};

// Canonical normalized decomposition: slice i is centered at ordering[i]. At each
// cut the active edges are numbered 1.. by (earlier endpoint position, later
// endpoint position, edge id). q = cutWidth. A graph with no vertex yields one
// empty slice.
UnitDecomposition decomposeAlongOrdering(const Digraph& g, const Ordering& ordering);

Digraph composeAll(const UnitDecomposition& u);

// Sub-slices of a unit slice keeping inherited numbers: every subgraph in which a
// kept frontier vertex keeps its edge, with at most c vertices per frontier.
// Sorted by canonical form.
std::vector<Slice> enumerateNumberedSubSlices(const Slice& s, std::size_t c);

// Inserts a permutation slice at cut k (between slices k-1 and k). The frontier
// number that is i-th smallest at that cut becomes newNumbers[i] on the right side.
UnitDecomposition insertPermutationSlice(const UnitDecomposition& u, std::size_t k,
                                         const std::vector<std::uint32_t>& newNumbers);
// Renames the numbers of cut k (1 <= k < slices.size()) on both of its sides.
UnitDecomposition renumberCut(const UnitDecomposition& u, std::size_t k,
                              const std::vector<std::uint32_t>& newNumbers);
// Numbers of the frontier at cut k, ascending.
std::vector<std::uint32_t> cutNumbers(const UnitDecomposition& u, std::size_t k);

// Text schema:
//   decomposition 1
//   q <q>
//   flags dilated=<0|1> normalized=<0|1>
//   semigroup <describe()>          (boundedSum(cap) only, others are rejected)
//   ordering <ids> | ordering -
//   slices <m>
//   <serializeSlice line> x m
std::string serializeDecomposition(const UnitDecomposition& u);
UnitDecomposition parseDecomposition(const std::string& text);

}  // namespace slicecount
