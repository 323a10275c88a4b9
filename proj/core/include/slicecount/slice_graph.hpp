#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "slicecount/decomposition.hpp"

namespace slicecount {

using BigCount = boost::multiprecision::cpp_int;

// Key under which slices from different graphs are matched: tags and origins
// dropped, weights kept.
std::string matchKey(const Slice& s);

// Automaton whose vertices are labeled by slices. Labels are interned; vertex
// identity is the caller's business.
class SliceGraph {
 public:
  SliceGraph() = default;
  SliceGraph(std::size_t c, std::size_t q) : c_(c), q_(q) {}

  std::uint32_t internLabel(const Slice& s);
  std::uint32_t addVertex(std::uint32_t label, std::optional<Weight> total = std::nullopt,
                          std::optional<std::uint32_t> layer = std::nullopt);
  // Duplicate edges are ignored.
  void addEdge(std::uint32_t from, std::uint32_t to);
  void setInitial(std::uint32_t v, bool on = true) { initial_.at(v) = on; }
  void setFinal(std::uint32_t v, bool on = true) { final_.at(v) = on; }

  std::size_t vertexCount() const { return vertexLabel_.size(); }
  std::size_t edgeCount() const { return edgeSet_.size(); }
  std::size_t labelCount() const { return labels_.size(); }
  const Slice& label(std::uint32_t v) const { return labels_[vertexLabel_[v]]; }
  std::uint32_t labelId(std::uint32_t v) const { return vertexLabel_[v]; }
  const Slice& labelSlice(std::uint32_t labelId) const { return labels_[labelId]; }
  const std::string& labelKey(std::uint32_t labelId) const { return labelKeys_[labelId]; }
  const std::vector<std::uint32_t>& successors(std::uint32_t v) const { return succ_[v]; }
  bool isInitial(std::uint32_t v) const { return initial_[v]; }
  bool isFinal(std::uint32_t v) const { return final_[v]; }
  std::vector<std::uint32_t> initials() const;
  std::vector<std::uint32_t> finals() const;
  std::optional<Weight> total(std::uint32_t v) const { return total_[v]; }
  std::optional<std::uint32_t> layer(std::uint32_t v) const { return layer_[v]; }

  std::size_t c() const { return c_; }
  std::size_t q() const { return q_; }
  void setMeta(std::size_t c, std::size_t q) { c_ = c, q_ = q; }
  const std::optional<WeightSemigroup>& omega() const { return omega_; }
  void setOmega(WeightSemigroup omega) { omega_ = std::move(omega); }

  // Throws InvalidArgument on a violated invariant (labels of initials/finals,
  // gluing along every edge).
  void validate() const;
  bool isAcyclic() const;
  // Vertices reachable from an initial and co-reachable to a final, renumbered.
  SliceGraph trimmed() const;

 private:
  std::size_t c_ = 0;
  std::size_t q_ = 0;
  std::optional<WeightSemigroup> omega_;
  std::vector<Slice> labels_;
  std::vector<std::string> labelKeys_;  // canonicalForm, origins dropped
  std::unordered_map<std::string, std::uint32_t> labelIndex_;
  std::vector<std::uint32_t> vertexLabel_;
  std::vector<std::optional<Weight>> total_;
  std::vector<std::optional<std::uint32_t>> layer_;
  std::vector<std::vector<std::uint32_t>> succ_;
  std::vector<bool> initial_;
  std::vector<bool> final_;
  std::unordered_set<std::uint64_t> edgeSet_;
};

// Layered graph of all sub-unit-decompositions of u of slice-width <= c. c is
// clamped to the width of u.
SliceGraph buildSubSliceGraph(const UnitDecomposition& u, std::size_t c);

// Restricts which renumbered labels are materialized; nullptr keeps all.
using LabelFilter = std::function<bool(const Slice&)>;
SliceGraph numberingExpansion(const SliceGraph& sg, std::size_t q, const LabelFilter& keep = nullptr);

// Weighted variants of an unweighted label; the default enumerates Ω^edges.
using WeightingSource = std::function<std::vector<Slice>(const Slice&)>;
// Vertices (v, w, tot) reachable from initials. tot sums the weights of completed
// edges (not touching the out-frontier) up to and including the vertex.
SliceGraph weightExpansion(const SliceGraph& sg, const WeightSemigroup& omega,
                           const WeightingSource& weightings = nullptr);
std::vector<Slice> allWeightings(const Slice& s, const WeightSemigroup& omega);

// Product with a counter of non-permutation slices; finals need count == l.
SliceGraph counterExpansion(const SliceGraph& sg, std::size_t l);
// Product on equal matchKey labels; labels, totals and layers come from a when
// present there, else from b. Trimmed.
SliceGraph intersect(const SliceGraph& a, const SliceGraph& b);
// Keeps only finals whose total is maximal among reachable finals; trimmed.
SliceGraph pruneNonMaximalFinals(const SliceGraph& sg);
// Merges language-equivalent vertices with equal labels (Moore refinement).
SliceGraph minimizeSliceGraph(const SliceGraph& sg);

struct DeterminismReport {
  bool deterministic = true;
  // Two initials, or two successors of `from`, sharing a label.
  std::optional<std::uint32_t> from;
  std::uint32_t first = 0;
  std::uint32_t second = 0;
};
DeterminismReport checkDeterministic(const SliceGraph& sg);

// Initial-to-final walk count. Throws InvalidArgument on cyclic or
// nondeterministic input.
BigCount countAcceptingPaths(const SliceGraph& sg);
// Totals of reachable finals, max first; empty if the language is empty.
std::optional<Weight> maximumFinalTotal(const SliceGraph& sg);
// Vertex sequences of accepting walks, at most `cap` of them, in DFS order.
std::vector<std::vector<std::uint32_t>> acceptingPaths(const SliceGraph& sg, std::size_t cap);
// Deterministic membership of a slice string (matched by matchKey).
bool acceptsString(const SliceGraph& sg, const std::vector<Slice>& word);

// Text schema:
//   slicegraph 1
//   meta c=<c> q=<q>
//   semigroup <boundedSum(cap)> | semigroup -
//   vertices <N>
//   <id> layer=<l|-> total=<t|-> flags=<I|F|IF|-> <serializeSlice>
//   edges <M>
//   <from> <to>
// Vertices are sorted by (layer, label, total, flags) before numbering.
std::string serializeSliceGraph(const SliceGraph& sg);
SliceGraph parseSliceGraph(const std::string& text);

}  // namespace slicecount
