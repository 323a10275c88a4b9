#include "slicecount/ordering.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "slicecount/errors.hpp"

namespace slicecount {

namespace {

// DFS over simple paths. `limit` stops the search at the first path crossing some
// cut more than limit times; otherwise `maxCrossing` collects the maximum.
class PathCrossingSearch {
 public:
  PathCrossingSearch(const Digraph& g, const Ordering& ordering)
      : g_(g), pos_(positions(ordering)), counters_(ordering.size() + 1, 0), onPath_(ordering.size(), false) {}

  ZigZagVerdict run(std::optional<std::size_t> limit, std::size_t ceiling) {
    limit_ = limit;
    ceiling_ = ceiling;
    for (VertexId v = 0; v < g_.vertexCount() && !done_; ++v) {
      vertices_.assign(1, v);
      onPath_[v] = true;
      extend(v);
      onPath_[v] = false;
    }
    return verdict_;
  }

  std::size_t maxCrossing() const { return max_; }

 private:
  void extend(VertexId v) {
    for (EdgeId e : g_.outEdges(v)) {
      VertexId w = g_.edge(e).target;
      // Returning to the first vertex closes a simple cycle; it is checked but not extended.
      const bool closes = w == vertices_.front();
      if (onPath_[w] && !closes) continue;
      auto [lo, hi] = std::minmax(pos_[v], pos_[w]);
      // Cut i separates positions < i from positions >= i.
      std::size_t violated = 0;
      for (std::size_t i = lo + 1; i <= hi; ++i) {
        std::size_t c = ++counters_[i];
        max_ = std::max(max_, c);
        if (limit_ && c > *limit_ && violated == 0) violated = i;
      }
      edges_.push_back(e);
      vertices_.push_back(w);
      if (violated != 0) {
        verdict_ = ZigZagVerdict{false, vertices_, edges_, violated};
        done_ = true;
      } else if (max_ >= ceiling_ && !limit_) {
        done_ = true;
      } else if (!closes) {
        onPath_[w] = true;
        extend(w);
        onPath_[w] = false;
      }
      vertices_.pop_back();
      edges_.pop_back();
      for (std::size_t i = lo + 1; i <= hi; ++i) --counters_[i];
      if (done_) return;
    }
  }

  const Digraph& g_;
  std::vector<std::size_t> pos_;
  std::vector<std::size_t> counters_;
  std::vector<bool> onPath_;
  std::vector<VertexId> vertices_;
  std::vector<EdgeId> edges_;
  std::optional<std::size_t> limit_;
  std::size_t ceiling_ = 0;
  std::size_t max_ = 0;
  bool done_ = false;
  ZigZagVerdict verdict_;
};

std::uint64_t bit(VertexId v) { return std::uint64_t{1} << v; }

class DvsnSearch {
 public:
  explicit DvsnSearch(const Digraph& g) : n_(g.vertexCount()), inNeighbors_(n_, 0) {
    if (n_ > 62) throw ResourceError("dvsn search supports at most 62 vertices");
    for (const Edge& e : g.edges())
      if (e.source != e.target) inNeighbors_[e.target] |= bit(e.source);
  }

  std::optional<Ordering> tryBound(std::size_t d) {
    d_ = d;
    failed_.clear();
    order_.clear();
    if (place(0)) return order_;
    return std::nullopt;
  }

 private:
  // Vertices outside `prefix` with an out-edge into it.
  std::size_t cost(std::uint64_t prefix) const {
    std::uint64_t sources = 0;
    for (std::size_t u = 0; u < n_; ++u)
      if (prefix & bit(u)) sources |= inNeighbors_[u];
    return static_cast<std::size_t>(__builtin_popcountll(sources & ~prefix));
  }

  bool place(std::uint64_t prefix) {
    if (order_.size() == n_) return true;
    if (failed_.count(prefix)) return false;
    for (VertexId v = 0; v < n_; ++v) {
      if (prefix & bit(v)) continue;
      std::uint64_t next = prefix | bit(v);
      if (cost(next) > d_) continue;
      order_.push_back(v);
      if (place(next)) return true;
      order_.pop_back();
    }
    failed_.insert(prefix);
    return false;
  }

  std::size_t n_;
  std::vector<std::uint64_t> inNeighbors_;
  std::size_t d_ = 0;
  std::unordered_set<std::uint64_t> failed_;
  Ordering order_;
};

}  // namespace

ZigZagVerdict verifyZigZag(const Digraph& g, const Ordering& ordering, std::size_t z) {
  requirePermutation(g, ordering);
  if (z < 1) throw InvalidArgument("verifyZigZag needs z >= 1");
  PathCrossingSearch search(g, ordering);
  return search.run(z, 0);
}

std::size_t zigzagNumberOfOrdering(const Digraph& g, const Ordering& ordering) {
  requirePermutation(g, ordering);
  PathCrossingSearch search(g, ordering);
  // No path crosses a cut more often than the cut has edges.
  search.run(std::nullopt, std::max<std::size_t>(cutWidth(g, ordering), 1));
  return search.maxCrossing();
}

std::size_t dvsn(const Digraph& g, const Ordering& ordering) {
  requirePermutation(g, ordering);
  const std::size_t n = ordering.size();
  auto pos = positions(ordering);
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t count = 0;
    for (std::size_t j = i; j < n; ++j) {
      VertexId v = ordering[j];
      for (EdgeId e : g.outEdges(v))
        if (pos[g.edge(e).target] < i) {
          ++count;
          break;
        }
    }
    best = std::max(best, count);
  }
  return best;
}

DvsnSearchResult searchMinDvsnOrdering(const Digraph& g, std::optional<std::size_t> budget) {
  DvsnSearch search(g);
  const std::size_t upper = g.vertexCount() == 0 ? 0 : g.vertexCount() - 1;
  const std::size_t limit = budget ? std::min(*budget, upper) : upper;
  for (std::size_t d = 0; d <= limit; ++d)
    if (auto ordering = search.tryBound(d)) return DvsnSearchResult{std::move(ordering), d, false};
  return DvsnSearchResult{std::nullopt, budget.value_or(upper), true};
}

OrderedDigraph orderingFromDvsn(const Digraph& g, const Ordering& ordering) {
  std::size_t d = dvsn(g, ordering);
  return OrderedDigraph{g, ordering, 2 * d + 1, BoundStatus::Claimed};
}

OrderedDigraph verifiedOrdering(const Digraph& g, const Ordering& ordering) {
  std::size_t z = zigzagNumberOfOrdering(g, ordering);
  return OrderedDigraph{g, ordering, z, BoundStatus::Verified};
}

Ordering dfsOrderingBidirectedTree(const Digraph& g) {
  const std::size_t n = g.vertexCount();
  if (n == 0) return {};
  std::map<std::pair<VertexId, VertexId>, int> balance;
  for (const Edge& e : g.edges()) {
    if (e.source == e.target) throw InvalidArgument("not a bidirected tree: self-loop");
    ++balance[{e.source, e.target}];
  }
  std::vector<std::vector<VertexId>> children(n);
  std::size_t undirected = 0;
  for (const auto& [pair, count] : balance) {
    if (count != 1) throw InvalidArgument("not a bidirected tree: parallel edges");
    auto reverse = balance.find({pair.second, pair.first});
    if (reverse == balance.end()) throw InvalidArgument("not a bidirected tree: edge without its reverse");
    if (pair.first < pair.second) ++undirected;
    children[pair.first].push_back(pair.second);
  }
  if (undirected != n - 1) throw InvalidArgument("not a bidirected tree: wrong edge count");
  Ordering order;
  std::vector<bool> seen(n, false);
  std::vector<VertexId> stack{0};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    order.push_back(v);
    auto& next = children[v];
    std::sort(next.begin(), next.end(), std::greater<>());
    for (VertexId w : next)
      if (!seen[w]) stack.push_back(w);
  }
  if (order.size() != n) throw InvalidArgument("not a bidirected tree: disconnected");
  return order;
}

}  // namespace slicecount
