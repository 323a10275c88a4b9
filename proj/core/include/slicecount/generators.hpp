#pragma once

#include <cstdint>
#include <random>

#include "slicecount/digraph.hpp"

namespace slicecount {

// Deterministic across platforms: draws use raw mt19937_64 output only.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : engine_() % bound; }
  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

 private:
  std::mt19937_64 engine_;
};

Digraph pathDigraph(std::size_t n);
Digraph cycleDigraph(std::size_t n);
// Both directions between every pair of distinct vertices; edges in lexicographic pair order.
Digraph bidirectedComplete(std::size_t n);
// D(n): complete binary tree on n = 2^h - 1 vertices in heap order (children of v
// are 2v+1, 2v+2), every tree edge in both directions.
Digraph bidirectedBinaryTree(std::size_t n);
// rows x cols grid, horizontal edges point left, vertical edges point up.
Digraph directedGrid(std::size_t rows, std::size_t cols);

// Edges only from lower to higher id, each pair present with probability p.
Digraph randomDag(SeededRng& rng, std::size_t n, double p);
// Each ordered pair (no loops) present with probability p.
Digraph randomDigraph(SeededRng& rng, std::size_t n, double p);
// Random weights in [0, cap] under boundedSum(cap).
Digraph withRandomWeights(SeededRng& rng, Digraph g, std::uint32_t cap);
// Relabels vertices by a random permutation; edge order is kept.
Digraph shuffledVertices(SeededRng& rng, const Digraph& g);

}  // namespace slicecount
