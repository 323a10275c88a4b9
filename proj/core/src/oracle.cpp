#include "slicecount/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "slicecount/errors.hpp"

namespace slicecount::oracle {

namespace {

using Mask = std::uint64_t;

std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

struct Env {
  std::vector<std::pair<std::string, Mask>> bindings;
  Mask get(const std::string& var) const {
    for (auto it = bindings.rbegin(); it != bindings.rend(); ++it)
      if (it->first == var) return it->second;
    throw InvalidArgument("unbound variable '" + var + "' during model checking");
  }
  bool has(const std::string& var) const {
    return std::any_of(bindings.begin(), bindings.end(), [&](const auto& b) { return b.first == var; });
  }
};

// Conjuncts that hold whenever f (or its negation) holds, looking through
// negations of disjunctions so that desugared universal guards are found.
void positiveConjuncts(const FormulaPtr& f, bool negated, std::vector<const Formula*>& out) {
  switch (f->kind) {
    case FormulaKind::And:
      if (!negated)
        for (const auto& c : f->children) positiveConjuncts(c, false, out);
      break;
    case FormulaKind::Or:
      if (negated)
        for (const auto& c : f->children) positiveConjuncts(c, true, out);
      break;
    case FormulaKind::Not: positiveConjuncts(f->children.at(0), !negated, out); break;
    case FormulaKind::Atom:
      if (!negated) out.push_back(f.get());
      break;
    default: break;
  }
}

class Checker {
 public:
  Checker(const Digraph& g, const Positions* positions, const Limits& limits)
      : g_(g), positions_(positions), limits_(limits), n_(g.vertexCount()), m_(g.edgeCount()) {
    if (n_ + m_ > limits.maxElements || n_ + m_ > 62)
      throw ResourceError("model checking is capped at " + std::to_string(limits.maxElements) + " elements");
    vertexMask_ = n_ ? (Mask{1} << n_) - 1 : 0;
    edgeMask_ = ((Mask{1} << (n_ + m_)) - 1) & ~vertexMask_;
  }

  bool eval(const FormulaPtr& f, Env& env) {
    switch (f->kind) {
      case FormulaKind::True: return true;
      case FormulaKind::False: return false;
      case FormulaKind::Not: return !eval(f->children.at(0), env);
      case FormulaKind::And:
        for (const auto& c : f->children)
          if (!eval(c, env)) return false;
        return true;
      case FormulaKind::Or:
        for (const auto& c : f->children)
          if (eval(c, env)) return true;
        return false;
      case FormulaKind::Atom: return atom(*f, env);
      case FormulaKind::Macro: return macro(*f, env);
      case FormulaKind::Exists: return exists(*f, env);
    }
    return false;
  }

 private:
  bool isVertex(std::size_t i) const { return i < n_; }
  const Edge& edgeAt(std::size_t i) const { return g_.edge(static_cast<EdgeId>(i - n_)); }
  std::size_t single(Mask m) const { return static_cast<std::size_t>(std::countr_zero(m)); }
  std::size_t pos(VertexId v) const {
    if (!positions_) throw InvalidArgument("frontier predicates need a vertex ordering");
    return positions_->at(v);
  }
  bool crossing(Mask x) const {
    if (popcount(x) != 1 || !(x & edgeMask_)) return false;
    const Edge& e = edgeAt(single(x));
    return e.source != e.target;
  }

  bool atom(const Formula& f, Env& env) {
    const Mask x = env.get(f.vars.at(0));
    auto y = [&] { return env.get(f.vars.at(1)); };
    switch (f.atom) {
      case AtomKind::Vertices: return (x & ~vertexMask_) == 0;
      case AtomKind::Edges: return (x & ~edgeMask_) == 0;
      case AtomKind::Singleton: return popcount(x) == 1;
      case AtomKind::Subset: return (x & ~y()) == 0;
      case AtomKind::Source:
      case AtomKind::Target: {
        const Mask ym = y();
        if (popcount(x) != 1 || popcount(ym) != 1 || !(x & edgeMask_) || !(ym & vertexMask_)) return false;
        const Edge& e = edgeAt(single(x));
        return (f.atom == AtomKind::Source ? e.source : e.target) == single(ym);
      }
      case AtomKind::VertexLabel:
        for (std::size_t i = 0; i < n_ + m_; ++i)
          if ((x >> i) & 1u)
            if (!isVertex(i) || g_.vertexLabel(static_cast<VertexId>(i)) != f.symbol) return false;
        return true;
      case AtomKind::EdgeLabel:
        for (std::size_t i = 0; i < n_ + m_; ++i)
          if ((x >> i) & 1u)
            if (isVertex(i) || edgeAt(i).label != f.symbol) return false;
        return true;
      case AtomKind::Frontier:
        if (!positions_) throw InvalidArgument("frontier predicates need a vertex ordering");
        return crossing(x);
      case AtomKind::ConsecutiveFrontiers:
        if (!positions_) throw InvalidArgument("frontier predicates need a vertex ordering");
        return crossing(x) && x == y();
      case AtomKind::SameFrontier: {
        const Mask ym = y();
        if (!crossing(x) || !crossing(ym)) return false;
        const Edge& a = edgeAt(single(x));
        const Edge& b = edgeAt(single(ym));
        auto lo = [&](const Edge& e) { return std::min(pos(e.source), pos(e.target)); };
        auto hi = [&](const Edge& e) { return std::max(pos(e.source), pos(e.target)); };
        return std::max(lo(a), lo(b)) < std::min(hi(a), hi(b));
      }
    }
    return false;
  }

  // Vertices vs, edges es (as element masks) form a directed simple path.
  bool isPath(Mask vs, Mask es) const {
    if (vs & ~vertexMask_ || es & ~edgeMask_) return false;
    if (!vs) return !es;
    if (popcount(es) + 1 != popcount(vs)) return false;
    std::vector<int> next(n_, -1);
    std::vector<int> indeg(n_, 0);
    for (std::size_t i = n_; i < n_ + m_; ++i) {
      if (!((es >> i) & 1u)) continue;
      const Edge& e = edgeAt(i);
      if (!((vs >> e.source) & 1u) || !((vs >> e.target) & 1u) || e.source == e.target) return false;
      if (next[e.source] >= 0) return false;
      next[e.source] = static_cast<int>(e.target);
      ++indeg[e.target];
    }
    int start = -1;
    for (std::size_t v = 0; v < n_; ++v)
      if ((vs >> v) & 1u && indeg[v] == 0) {
        if (start >= 0) return false;
        start = static_cast<int>(v);
      }
    if (start < 0) return false;
    Mask seen = 0;
    for (int v = start; v >= 0; v = next[v]) {
      if ((seen >> v) & 1u) return false;
      seen |= Mask{1} << v;
    }
    return seen == vs;
  }

  bool hasPathThrough(Mask vs) const {
    if (!vs) return true;
    if (vs & ~vertexMask_) return false;
    // Hamiltonian path search in the subgraph induced by vs.
    std::function<bool(VertexId, Mask)> dfs = [&](VertexId v, Mask seen) {
      if (seen == vs) return true;
      for (EdgeId e : g_.outEdges(v)) {
        VertexId w = g_.edge(e).target;
        if ((vs >> w) & 1u && !((seen >> w) & 1u) && dfs(w, seen | (Mask{1} << w))) return true;
      }
      return false;
    };
    for (std::size_t v = 0; v < n_; ++v)
      if ((vs >> v) & 1u && dfs(static_cast<VertexId>(v), Mask{1} << v)) return true;
    return false;
  }

  bool macro(const Formula& f, Env& env) {
    switch (f.macro) {
      case MacroKind::Path: return isPath(env.get(f.vars.at(0)), env.get(f.vars.at(1)));
      case MacroKind::PathVertices: return hasPathThrough(env.get(f.vars.at(0)));
      case MacroKind::PathEdges: {
        const Mask es = env.get(f.vars.at(0));
        if (!es) return true;
        Mask vs = 0;
        for (std::size_t i = n_; i < n_ + m_; ++i)
          if ((es >> i) & 1u) vs |= (Mask{1} << edgeAt(i).source) | (Mask{1} << edgeAt(i).target);
        return isPath(vs, es);
      }
      case MacroKind::Connected: return isConnected(g_);
      case MacroKind::Forest: return isForest(g_);
      case MacroKind::Bipartite: return isBipartite(g_);
      case MacroKind::HamiltonianCycle: return isHamiltonianCycle(g_);
      case MacroKind::Unitable: return isUnionOfKPaths(g_, static_cast<std::size_t>(f.parameter), limits_);
      case MacroKind::ZigZag:
        if (!positions_) throw InvalidArgument("the zigzag macro needs a vertex ordering");
        return maxPathCrossings(g_, *positions_, limits_) <= static_cast<std::size_t>(f.parameter);
    }
    return false;
  }

  bool exists(const Formula& f, Env& env) {
    const std::string& var = f.vars.at(0);
    std::vector<const Formula*> guards;
    positiveConjuncts(f.children.at(0), false, guards);
    Mask universe = vertexMask_ | edgeMask_;
    bool singleton = false;
    for (const Formula* a : guards) {
      if (a->vars.empty() || a->vars[0] != var) continue;
      if (a->atom == AtomKind::Singleton) singleton = true;
      if (a->atom == AtomKind::Vertices) universe &= vertexMask_;
      if (a->atom == AtomKind::Edges) universe &= edgeMask_;
      if (a->atom == AtomKind::Subset && a->vars[1] != var && env.has(a->vars[1])) universe &= env.get(a->vars[1]);
    }
    env.bindings.emplace_back(var, 0);
    bool found = false;
    if (singleton) {
      for (Mask rest = universe; rest && !found; rest &= rest - 1) {
        env.bindings.back().second = rest & (~rest + 1);
        found = eval(f.children.at(0), env);
      }
    } else {
      if (popcount(universe) > 26) throw ResourceError("set quantifier over more than 26 elements");
      // All submasks of the universe, including the empty set.
      Mask sub = universe;
      while (true) {
        env.bindings.back().second = sub;
        if (eval(f.children.at(0), env)) {
          found = true;
          break;
        }
        if (sub == 0) break;
        sub = (sub - 1) & universe;
      }
    }
    env.bindings.pop_back();
    return found;
  }

  const Digraph& g_;
  const Positions* positions_;
  const Limits& limits_;
  std::size_t n_, m_;
  Mask vertexMask_ = 0, edgeMask_ = 0;
};

std::vector<std::size_t> components(const Digraph& g, std::size_t& count) {
  std::vector<std::size_t> comp(g.vertexCount(), SIZE_MAX);
  count = 0;
  for (VertexId s = 0; s < g.vertexCount(); ++s) {
    if (comp[s] != SIZE_MAX) continue;
    std::vector<VertexId> stack{s};
    comp[s] = count;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      auto visit = [&](VertexId w) {
        if (comp[w] == SIZE_MAX) comp[w] = count, stack.push_back(w);
      };
      for (EdgeId e : g.outEdges(v)) visit(g.edge(e).target);
      for (EdgeId e : g.inEdges(v)) visit(g.edge(e).source);
    }
    ++count;
  }
  return comp;
}

struct SimplePath {
  Mask vertices = 0;
  Mask edges = 0;  // bit i = edge i
};

}  // namespace

void enumerateSubgraphs(const Digraph& g, std::optional<std::size_t> l,
                        const std::function<void(const Subgraph&)>& visit, const Limits& limits) {
  const std::size_t n = g.vertexCount();
  if (n > limits.maxVertices)
    throw ResourceError("subgraph enumeration is capped at " + std::to_string(limits.maxVertices) + " vertices");
  Subgraph h;
  for (Mask vs = 0; vs < (Mask{1} << n); ++vs) {
    if (l && popcount(vs) != *l) continue;
    h.vertices.clear();
    for (VertexId v = 0; v < n; ++v)
      if ((vs >> v) & 1u) h.vertices.push_back(v);
    std::vector<EdgeId> inside;
    for (EdgeId e = 0; e < g.edgeCount(); ++e)
      if ((vs >> g.edge(e).source) & 1u && (vs >> g.edge(e).target) & 1u) inside.push_back(e);
    if (inside.size() > limits.maxEdgeSubsetBits)
      throw ResourceError("subgraph enumeration: more than " + std::to_string(limits.maxEdgeSubsetBits) +
                          " edges inside one vertex set");
    for (Mask es = 0; es < (Mask{1} << inside.size()); ++es) {
      h.edges.clear();
      for (std::size_t i = 0; i < inside.size(); ++i)
        if ((es >> i) & 1u) h.edges.push_back(inside[i]);
      visit(h);
    }
  }
}

std::vector<Subgraph> listSubgraphs(const Digraph& g, std::optional<std::size_t> l, const Limits& limits) {
  std::vector<Subgraph> out;
  enumerateSubgraphs(g, l, [&](const Subgraph& h) { out.push_back(h); }, limits);
  return out;
}

Digraph extract(const Digraph& g, const Subgraph& h) {
  Digraph out(0, g.semigroup());
  std::map<VertexId, VertexId> id;
  for (VertexId v : h.vertices) id[v] = out.addVertex(g.vertexLabel(v));
  for (EdgeId e : h.edges) {
    const Edge& edge = g.edge(e);
    out.addEdge(id.at(edge.source), id.at(edge.target), edge.label, edge.weight);
  }
  return out;
}

Weight subgraphWeight(const Digraph& g, const Subgraph& h) {
  Weight w = g.semigroup().identity();
  for (EdgeId e : h.edges) w = g.semigroup().combine(w, g.edge(e).weight);
  return w;
}

bool modelCheck(const Digraph& g, const FormulaPtr& phi, const Positions* positions, const Limits& limits) {
  if (auto free = freeVariables(phi); !free.empty())
    throw InvalidArgument("formula has free variable '" + *free.begin() + "'");
  Checker checker(g, positions, limits);
  Env env;
  return checker.eval(phi, env);
}

bool isConnected(const Digraph& g) {
  std::size_t count = 0;
  components(g, count);
  return count <= 1;
}

bool isForest(const Digraph& g) {
  std::vector<VertexId> parent(g.vertexCount());
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<VertexId(VertexId)> find = [&](VertexId v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (const Edge& e : g.edges()) {
    auto a = find(e.source), b = find(e.target);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

bool isBipartite(const Digraph& g) {
  std::vector<int> color(g.vertexCount(), -1);
  for (VertexId s = 0; s < g.vertexCount(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::vector<VertexId> stack{s};
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      std::vector<VertexId> around;
      for (EdgeId e : g.outEdges(v)) around.push_back(g.edge(e).target);
      for (EdgeId e : g.inEdges(v)) around.push_back(g.edge(e).source);
      for (VertexId w : around) {
        if (color[w] < 0) color[w] = 1 - color[v], stack.push_back(w);
        else if (color[w] == color[v]) return false;
      }
    }
  }
  return true;
}

bool isHamiltonianCycle(const Digraph& g) {
  if (g.vertexCount() == 0) return false;
  for (VertexId v = 0; v < g.vertexCount(); ++v)
    if (g.outEdges(v).size() != 1 || g.inEdges(v).size() != 1) return false;
  return isConnected(g);
}

bool isUnionOfKPaths(const Digraph& g, std::size_t k, const Limits& limits) {
  const std::size_t n = g.vertexCount(), m = g.edgeCount();
  if (n > 62 || m > 64) throw ResourceError("path cover search is capped at 62 vertices and 64 edges");
  for (const Edge& e : g.edges())
    if (e.source == e.target) return false;
  if (n == 0) return true;
  // Paths that extend in neither direction; every path lies inside one of them.
  std::set<std::pair<Mask, Mask>> maximal;
  std::function<void(VertexId, Mask, Mask)> grow = [&](VertexId v, Mask vs, Mask es) {
    bool extended = false;
    for (EdgeId e : g.outEdges(v)) {
      VertexId w = g.edge(e).target;
      if ((vs >> w) & 1u) continue;
      extended = true;
      grow(w, vs | (Mask{1} << w), es | (Mask{1} << e));
    }
    if (extended) return;
    maximal.emplace(vs, es);
    if (maximal.size() > limits.maxPaths) throw ResourceError("too many maximal paths");
  };
  for (VertexId s = 0; s < n; ++s) grow(s, Mask{1} << s, 0);
  std::vector<SimplePath> paths;
  for (auto [vs, es] : maximal) {
    // Drop paths extendable backward at their start.
    VertexId start = 0;
    std::vector<int> indeg(n, 0);
    for (EdgeId e = 0; e < m; ++e)
      if ((es >> e) & 1u) ++indeg[g.edge(e).target];
    for (VertexId v = 0; v < n; ++v)
      if ((vs >> v) & 1u && indeg[v] == 0) start = v;
    bool extendable = false;
    for (EdgeId e : g.inEdges(start))
      if (!((vs >> g.edge(e).source) & 1u)) extendable = true;
    if (!extendable) paths.push_back(SimplePath{vs, es});
  }
  const Mask allV = (Mask{1} << n) - 1;
  const Mask allE = m == 64 ? ~Mask{0} : (Mask{1} << m) - 1;
  std::function<bool(Mask, Mask, std::size_t)> cover = [&](Mask vs, Mask es, std::size_t left) {
    if (vs == allV && es == allE) return true;
    if (left == 0) return false;
    // Branch on the first uncovered element.
    bool onVertex = vs != allV;
    std::size_t target = onVertex ? static_cast<std::size_t>(std::countr_zero(~vs & allV))
                                  : static_cast<std::size_t>(std::countr_zero(~es & allE));
    for (const SimplePath& p : paths) {
      bool covers = onVertex ? ((p.vertices >> target) & 1u) : ((p.edges >> target) & 1u);
      if (covers && cover(vs | p.vertices, es | p.edges, left - 1)) return true;
    }
    return false;
  };
  return cover(0, 0, k);
}

std::size_t maxPathCrossings(const Digraph& g, const Positions& positions, const Limits& limits) {
  const std::size_t n = g.vertexCount();
  if (n > 62) throw ResourceError("path crossing search is capped at 62 vertices");
  if (positions.size() < n) throw InvalidArgument("positions do not cover the graph");
  // Rank the positions of g's vertices so cuts are 1..n-1.
  std::vector<std::size_t> rank(n);
  std::vector<VertexId> byPos(n);
  std::iota(byPos.begin(), byPos.end(), 0u);
  std::sort(byPos.begin(), byPos.end(), [&](VertexId a, VertexId b) { return positions[a] < positions[b]; });
  for (std::size_t i = 0; i < n; ++i) rank[byPos[i]] = i;
  std::vector<std::size_t> cut(n + 1, 0);
  std::size_t best = 0, visited = 0;
  VertexId start = 0;
  // An edge back to `start` closes a simple cycle, which counts as a closed path.
  std::function<void(VertexId, Mask)> walk = [&](VertexId v, Mask seen) {
    if (++visited > limits.maxPaths) throw ResourceError("too many simple paths");
    for (EdgeId e : g.outEdges(v)) {
      VertexId w = g.edge(e).target;
      const bool closes = w == start;
      if (!closes && ((seen >> w) & 1u)) continue;
      auto lo = std::min(rank[v], rank[w]), hi = std::max(rank[v], rank[w]);
      for (auto i = lo + 1; i <= hi; ++i) best = std::max(best, ++cut[i]);
      if (!closes) walk(w, seen | (Mask{1} << w));
      for (auto i = lo + 1; i <= hi; ++i) --cut[i];
    }
  };
  for (start = 0; start < n; ++start) walk(start, Mask{1} << start);
  return best;
}

Result count(const Digraph& g, const Ordering& ordering, const Query& query, const Limits& limits) {
  if (!query.formula) throw InvalidArgument("oracle query without a formula");
  const auto pos = positions(ordering);
  Result result;
  std::vector<std::pair<Weight, Subgraph>> found;
  enumerateSubgraphs(
      g, query.l,
      [&](const Subgraph& h) {
        Digraph hg = extract(g, h);
        Positions hpos;
        for (VertexId v : h.vertices) hpos.push_back(pos.at(v));
        if (!modelCheck(hg, query.formula, &hpos, limits)) return;
        if (!isUnionOfKPaths(hg, query.k, limits)) return;
        if (maxPathCrossings(hg, hpos, limits) > query.z) return;
        ++result.satisfying;
        const Weight w = subgraphWeight(g, h);
        if (!result.maxWeight || w > *result.maxWeight) result.maxWeight = w;
        if (query.maximal || query.witnessCap) found.emplace_back(w, h);
      },
      limits);
  if (query.maximal) {
    for (const auto& [w, h] : found)
      if (w == result.maxWeight) {
        ++result.count;
        if (query.witnessCap && result.witnesses.size() < *query.witnessCap) result.witnesses.push_back(h);
      }
  } else {
    result.count = result.satisfying;
    if (query.witnessCap)
      for (std::size_t i = 0; i < found.size() && i < *query.witnessCap; ++i) result.witnesses.push_back(found[i].second);
  }
  return result;
}

}  // namespace slicecount::oracle
