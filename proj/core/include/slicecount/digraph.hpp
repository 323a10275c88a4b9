#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slicecount/semigroup.hpp"

namespace slicecount {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Ordering = std::vector<VertexId>;

// Reserved label for vertices and edges without an explicit one.
inline const std::string kDefaultLabel = "\xC2\xB7";  // U+00B7 MIDDLE DOT

struct Edge {
  VertexId source = 0;
  VertexId target = 0;
  std::string label = kDefaultLabel;
  Weight weight = 0;
};

// Labeled multi-digraph with semigroup edge weights. Built incrementally, then
// treated as an immutable value.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t vertexCount, WeightSemigroup omega = WeightSemigroup::trivial());

  VertexId addVertex(std::string label = kDefaultLabel);
  // Weight defaults to the semigroup identity.
  EdgeId addEdge(VertexId source, VertexId target, std::string label = kDefaultLabel,
                 std::optional<Weight> weight = std::nullopt);
  void setVertexLabel(VertexId v, std::string label);
  void setEdgeWeight(EdgeId e, Weight w);

  std::size_t vertexCount() const { return vertexLabels_.size(); }
  std::size_t edgeCount() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertexLabel(VertexId v) const { return vertexLabels_.at(v); }
  std::span<const EdgeId> outEdges(VertexId v) const { return out_.at(v); }
  std::span<const EdgeId> inEdges(VertexId v) const { return in_.at(v); }
  const WeightSemigroup& semigroup() const { return omega_; }
  void setSemigroup(WeightSemigroup omega);

  // Sum of all edge weights.
  Weight totalWeight() const;

 private:
  std::vector<std::string> vertexLabels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  WeightSemigroup omega_;
};

// Edge-list text: "n m" then m lines "src dst [vlabel-src vlabel-dst] [weight]".
// '#' starts a comment. Weights are parsed by `omega`.
Digraph parseDigraph(std::istream& in, const WeightSemigroup& omega = WeightSemigroup::trivial());
Digraph parseDigraph(const std::string& text,
                     const WeightSemigroup& omega = WeightSemigroup::trivial());
Digraph loadDigraph(const std::filesystem::path& path,
                    const WeightSemigroup& omega = WeightSemigroup::trivial());
std::string formatDigraph(const Digraph& g);

// One line of whitespace-separated vertex ids.
Ordering parseOrdering(const std::string& text);
Ordering loadOrdering(const std::filesystem::path& path);
std::string formatOrdering(const Ordering& ordering);

// Throws InvalidArgument unless `ordering` is a permutation of g's vertices.
void requirePermutation(const Digraph& g, const Ordering& ordering);
Ordering identityOrdering(std::size_t n);
// position[v] = index of v in `ordering`.
std::vector<std::size_t> positions(const Ordering& ordering);

bool isDag(const Digraph& g);
// Some topological order; nullopt if g has a cycle. Ties broken by smallest id.
std::optional<Ordering> topologicalOrdering(const Digraph& g);

// Edges with one endpoint among the first i vertices of `ordering`, sorted by id.
std::vector<EdgeId> cutEdges(const Digraph& g, const Ordering& ordering, std::size_t i);
std::size_t cutWidth(const Digraph& g, const Ordering& ordering);

}  // namespace slicecount
