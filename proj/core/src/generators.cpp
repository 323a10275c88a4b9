#include "slicecount/generators.hpp"

#include <numeric>

#include "slicecount/errors.hpp"

namespace slicecount {

Digraph pathDigraph(std::size_t n) {
  Digraph g(n);
  for (std::size_t v = 0; v + 1 < n; ++v) g.addEdge(v, v + 1);
  return g;
}

Digraph cycleDigraph(std::size_t n) {
  Digraph g(n);
  for (std::size_t v = 0; v < n; ++v) g.addEdge(v, (v + 1) % n);
  return g;
}

Digraph bidirectedComplete(std::size_t n) {
  Digraph g(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = 0; v < n; ++v)
      if (u != v) g.addEdge(u, v);
  return g;
}

Digraph bidirectedBinaryTree(std::size_t n) {
  if (((n + 1) & n) != 0) throw InvalidArgument("D(n) needs n = 2^h - 1");
  Digraph g(n);
  for (VertexId v = 1; v < n; ++v) {
    VertexId parent = (v - 1) / 2;
    g.addEdge(parent, v);
    g.addEdge(v, parent);
  }
  return g;
}

Digraph directedGrid(std::size_t rows, std::size_t cols) {
  Digraph g(rows * cols);
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c > 0) g.addEdge(id(r, c), id(r, c - 1));
      if (r > 0) g.addEdge(id(r, c), id(r - 1, c));
    }
  return g;
}

Digraph randomDag(SeededRng& rng, std::size_t n, double p) {
  Digraph g(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (rng.chance(p)) g.addEdge(u, v);
  return g;
}

Digraph randomDigraph(SeededRng& rng, std::size_t n, double p) {
  Digraph g(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = 0; v < n; ++v)
      if (u != v && rng.chance(p)) g.addEdge(u, v);
  return g;
}

Digraph withRandomWeights(SeededRng& rng, Digraph g, std::uint32_t cap) {
  g.setSemigroup(WeightSemigroup::boundedSum(cap));
  for (EdgeId e = 0; e < g.edgeCount(); ++e) g.setEdgeWeight(e, static_cast<Weight>(rng.below(cap + 1)));
  return g;
}

Digraph shuffledVertices(SeededRng& rng, const Digraph& g) {
  const std::size_t n = g.vertexCount();
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  Digraph h(n, g.semigroup());
  for (VertexId v = 0; v < n; ++v) h.setVertexLabel(perm[v], g.vertexLabel(v));
  for (const Edge& e : g.edges()) h.addEdge(perm[e.source], perm[e.target], e.label, e.weight);
  return h;
}

}  // namespace slicecount
