#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slicecount/digraph.hpp"

namespace slicecount {

enum class Role : std::uint8_t { In, Center, Out };

struct SliceVertex {
  Role role = Role::Center;
  std::uint32_t number = 0;  // frontier number, >= 1; unused for centers
  std::string label = kDefaultLabel;
  std::optional<VertexId> origin;
};

struct SliceEdge {
  std::uint32_t source = 0;  // index into Slice::vertices()
  std::uint32_t target = 0;
  std::string label = kDefaultLabel;
  Weight weight = 0;
  std::optional<EdgeId> origin;
  // Distinguishes parallel loops at one center; part of the slice's identity.
  std::uint32_t tag = 0;
};

// A digraph fragment with numbered in/out frontiers and a center.
// Invariants (checked by validate): every frontier vertex touches exactly one edge;
// no edge has both endpoints in one frontier; numbers are distinct within a frontier.
class Slice {
 public:
  Slice() = default;

  std::uint32_t addIn(std::uint32_t number);
  std::uint32_t addOut(std::uint32_t number);
  std::uint32_t addCenter(std::string label = kDefaultLabel, std::optional<VertexId> origin = std::nullopt);
  std::uint32_t addEdge(std::uint32_t source, std::uint32_t target, std::string label = kDefaultLabel,
                        Weight weight = 0, std::optional<EdgeId> origin = std::nullopt,
                        std::uint32_t tag = 0);

  // Throws InvalidArgument on a violated invariant.
  void validate() const;

  const std::vector<SliceVertex>& vertices() const { return vertices_; }
  const std::vector<SliceEdge>& edges() const { return edges_; }
  const SliceVertex& vertex(std::uint32_t i) const { return vertices_.at(i); }
  const SliceEdge& edge(std::uint32_t i) const { return edges_.at(i); }

  // Vertex indices; frontiers sorted by number, centers in insertion order.
  std::vector<std::uint32_t> inFrontier() const { return frontier(Role::In); }
  std::vector<std::uint32_t> outFrontier() const { return frontier(Role::Out); }
  std::vector<std::uint32_t> centers() const;
  std::vector<std::uint32_t> inNumbers() const;
  std::vector<std::uint32_t> outNumbers() const;
  std::size_t inSize() const;
  std::size_t outSize() const;
  std::size_t centerCount() const;
  std::size_t width() const { return std::max(inSize(), outSize()); }

  bool isEmpty() const { return vertices_.empty(); }
  bool isInitial() const { return inSize() == 0; }
  bool isFinal() const { return outSize() == 0; }
  bool isUnit() const { return centerCount() <= 1; }
  // Empty center; every edge joins the two frontiers.
  bool isPermutation() const;
  bool isNormalized() const;

  // For an edge touching a frontier: +1 if it points from the in side toward the
  // out side (target in O, or source in I), -1 if it points back, 0 otherwise.
  int orientation(std::uint32_t edge) const;
  // The unique edge touching frontier vertex v.
  std::uint32_t frontierEdge(std::uint32_t v) const;
  // Index of the frontier vertex with this role and number.
  std::optional<std::uint32_t> findFrontier(Role role, std::uint32_t number) const;

  // Edges not touching the out-frontier, i.e. edges completed in this slice.
  std::vector<std::uint32_t> completedEdges() const;

 private:
  std::vector<std::uint32_t> frontier(Role role) const;

  std::vector<SliceVertex> vertices_;
  std::vector<SliceEdge> edges_;
};

struct CanonicalOptions {
  bool origins = false;
  bool weights = true;
  bool tags = true;
  bool labels = true;
};

// Injective encoding of a numbered slice up to isomorphism fixing frontier numbers.
std::string canonicalForm(const Slice& s, const CanonicalOptions& options = {});
// Canonical form with origins; parseSlice inverts it exactly.
std::string serializeSlice(const Slice& s);
Slice parseSlice(const std::string& text);

bool canGlue(const Slice& a, const Slice& b);
// a ∘ b. Throws InvalidArgument unless canGlue(a, b). Fused edges take label,
// weight and tag from b's segment.
Slice compose(const Slice& a, const Slice& b);
Slice composeAll(const std::vector<Slice>& slices);

// Renumbers frontiers to 1..|I| and 1..|O| preserving order.
Slice normalize(const Slice& s);
// Drops origins, weights and tags: the symbol a property automaton reads.
Slice stripToSymbol(const Slice& s);

// A slice without frontier vertices as a plain digraph. Vertices and edges are
// ordered by origin when every element carries one, else by position.
Digraph sliceToDigraph(const Slice& s, const WeightSemigroup& omega = WeightSemigroup::trivial());

// Disjoint union of a slice sequence plus links from each out-frontier vertex to
// the equally numbered in-frontier vertex of the next slice.
struct PlusStructure {
  struct Vertex {
    std::size_t slice = 0;
    SliceVertex data;
  };
  struct Segment {
    std::size_t slice = 0;
    std::uint32_t source = 0;  // index into vertices
    std::uint32_t target = 0;
    SliceEdge data;
  };
  std::vector<Vertex> vertices;
  std::vector<Segment> edges;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> links;  // out vertex -> in vertex
};

PlusStructure oplus(const Slice& a, const Slice& b);
PlusStructure oplusAll(const std::vector<Slice>& slices);
// Replaces every maximal chain segment-link-segment-... by one edge.
Digraph contractFrontierChains(const PlusStructure& plus,
                               const WeightSemigroup& omega = WeightSemigroup::trivial());

}  // namespace slicecount
