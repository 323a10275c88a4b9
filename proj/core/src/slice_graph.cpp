#include "slicecount/slice_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <cstdio>
#include <functional>
#include <sstream>

#include "slicecount/errors.hpp"

namespace slicecount {

std::string matchKey(const Slice& s) {
  CanonicalOptions opt;
  opt.tags = false;
  return canonicalForm(s, opt);
}

std::uint32_t SliceGraph::internLabel(const Slice& s) {
  std::string full = serializeSlice(s);
  auto it = labelIndex_.find(full);
  if (it != labelIndex_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(labels_.size());
  labels_.push_back(s);
  labelKeys_.push_back(canonicalForm(s));
  labelIndex_.emplace(std::move(full), id);
  return id;
}

std::uint32_t SliceGraph::addVertex(std::uint32_t label, std::optional<Weight> total,
                                    std::optional<std::uint32_t> layer) {
  if (label >= labels_.size()) throw InvalidArgument("unknown slice label");
  vertexLabel_.push_back(label);
  total_.push_back(total);
  layer_.push_back(layer);
  succ_.emplace_back();
  initial_.push_back(false);
  final_.push_back(false);
  return static_cast<std::uint32_t>(vertexLabel_.size() - 1);
}

void SliceGraph::addEdge(std::uint32_t from, std::uint32_t to) {
  if (from >= vertexCount() || to >= vertexCount()) throw InvalidArgument("edge endpoint out of range");
  if (edgeSet_.insert((std::uint64_t{from} << 32) | to).second) succ_[from].push_back(to);
}

std::vector<std::uint32_t> SliceGraph::initials() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < vertexCount(); ++v)
    if (initial_[v]) out.push_back(v);
  return out;
}

std::vector<std::uint32_t> SliceGraph::finals() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < vertexCount(); ++v)
    if (final_[v]) out.push_back(v);
  return out;
}

void SliceGraph::validate() const {
  for (std::uint32_t v = 0; v < vertexCount(); ++v) {
    if (initial_[v] && !label(v).isInitial()) throw InvalidArgument("initial vertex with non-initial slice");
    if (final_[v] && !label(v).isFinal()) throw InvalidArgument("final vertex with non-final slice");
    for (auto w : succ_[v])
      if (!canGlue(label(v), label(w)))
        throw InvalidArgument("edge " + std::to_string(v) + "->" + std::to_string(w) + " does not glue");
  }
}

bool SliceGraph::isAcyclic() const {
  std::vector<std::size_t> indegree(vertexCount(), 0);
  for (std::uint32_t v = 0; v < vertexCount(); ++v)
    for (auto w : succ_[v]) ++indegree[w];
  std::vector<std::uint32_t> ready;
  for (std::uint32_t v = 0; v < vertexCount(); ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    auto v = ready.back();
    ready.pop_back();
    ++seen;
    for (auto w : succ_[v])
      if (--indegree[w] == 0) ready.push_back(w);
  }
  return seen == vertexCount();
}

SliceGraph SliceGraph::trimmed() const {
  const std::size_t n = vertexCount();
  std::vector<std::vector<std::uint32_t>> pred(n);
  for (std::uint32_t v = 0; v < n; ++v)
    for (auto w : succ_[v]) pred[w].push_back(v);
  auto sweep = [n](const std::vector<bool>& seeds, const std::vector<std::vector<std::uint32_t>>& adj) {
    std::vector<bool> mark = seeds;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t v = 0; v < n; ++v)
      if (mark[v]) stack.push_back(v);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v])
        if (!mark[w]) mark[w] = true, stack.push_back(w);
    }
    return mark;
  };
  auto forward = sweep(initial_, succ_);
  auto backward = sweep(final_, pred);
  SliceGraph out(c_, q_);
  out.omega_ = omega_;
  std::vector<std::uint32_t> map(n, UINT32_MAX);
  std::vector<std::uint32_t> labelMap(labels_.size(), UINT32_MAX);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!forward[v] || !backward[v]) continue;
    auto& l = labelMap[vertexLabel_[v]];
    if (l == UINT32_MAX) l = out.internLabel(labels_[vertexLabel_[v]]);
    map[v] = out.addVertex(l, total_[v], layer_[v]);
    out.initial_[map[v]] = initial_[v];
    out.final_[map[v]] = final_[v];
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (map[v] != UINT32_MAX)
      for (auto w : succ_[v])
        if (map[w] != UINT32_MAX) out.addEdge(map[v], map[w]);
  return out;
}

namespace {

std::string seamSignature(const Slice& s, Role role) {
  std::string sig;
  for (auto v : role == Role::In ? s.inFrontier() : s.outFrontier()) {
    auto e = s.frontierEdge(v);
    sig += std::to_string(s.vertex(v).number) + (s.orientation(e) > 0 ? "+" : "-") +
           std::to_string(s.edge(e).weight) + ",";
  }
  return sig;
}

bool hasCenter(const Slice& s) { return s.centerCount() > 0; }

Weight completedWeight(const Slice& s, const WeightSemigroup& omega) {
  Weight w = omega.identity();
  for (auto e : s.completedEdges()) w = omega.combine(w, s.edge(e).weight);
  return w;
}

// All increasing tuples of size k from {1..q}.
std::vector<std::vector<std::uint32_t>> increasingTuples(std::size_t q, std::size_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  if (k > q) return out;
  std::vector<std::uint32_t> cur(k);
  std::iota(cur.begin(), cur.end(), 1u);
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == q - (k - i)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

Slice renumbered(const Slice& s, const std::vector<std::uint32_t>& in, const std::vector<std::uint32_t>& out) {
  Slice r;
  for (const SliceVertex& v : s.vertices()) {
    if (v.role == Role::In) r.addIn(in.at(v.number - 1));
    else if (v.role == Role::Out) r.addOut(out.at(v.number - 1));
    else r.addCenter(v.label, v.origin);
  }
  for (const SliceEdge& e : s.edges()) r.addEdge(e.source, e.target, e.label, e.weight, e.origin, e.tag);
  return r;
}

template <class Key, class Hash = std::hash<Key>>
struct VertexTable {
  std::unordered_map<Key, std::uint32_t, Hash> index;
  std::deque<std::uint32_t> queue;
};

struct TripleHash {
  std::size_t operator()(const std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>& t) const {
    auto [a, b, c] = t;
    return std::hash<std::uint64_t>()((std::uint64_t{a} * 0x9E3779B97F4A7C15ull) ^ (std::uint64_t{b} << 21) ^ c);
  }
};

}  // namespace

SliceGraph buildSubSliceGraph(const UnitDecomposition& u, std::size_t c) {
  if (!u.normalized) throw InvalidArgument("buildSubSliceGraph needs a normalized decomposition");
  c = std::min(c, u.width());
  SliceGraph sg(c, u.q);
  sg.setOmega(u.omega);
  std::vector<std::vector<std::uint32_t>> layers(u.slices.size());
  for (std::size_t i = 0; i < u.slices.size(); ++i) {
    for (Slice& sub : enumerateNumberedSubSlices(u.slices[i], c)) {
      auto label = sg.internLabel(sub);
      layers[i].push_back(sg.addVertex(label, std::nullopt, static_cast<std::uint32_t>(i)));
    }
  }
  for (auto v : layers.front())
    if (sg.label(v).isInitial()) sg.setInitial(v);
  for (auto v : layers.back())
    if (sg.label(v).isFinal()) sg.setFinal(v);
  for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
    std::unordered_map<std::string, std::vector<std::uint32_t>> byInSeam;
    for (auto w : layers[i + 1]) byInSeam[seamSignature(sg.label(w), Role::In)].push_back(w);
    for (auto v : layers[i]) {
      auto it = byInSeam.find(seamSignature(sg.label(v), Role::Out));
      if (it == byInSeam.end()) continue;
      for (auto w : it->second) sg.addEdge(v, w);
    }
  }
  return sg;
}

SliceGraph numberingExpansion(const SliceGraph& sg, std::size_t q, const LabelFilter& keep) {
  if (q < sg.c()) throw InvalidArgument("numbering expansion needs q >= c");
  SliceGraph out(sg.c(), q);
  if (sg.omega()) out.setOmega(*sg.omega());
  // copies[v] maps an in-numbering to the copies of v carrying it.
  std::vector<std::map<std::vector<std::uint32_t>, std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>>>>
      copies(sg.vertexCount());
  for (std::uint32_t v = 0; v < sg.vertexCount(); ++v) {
    const Slice& s = sg.label(v);
    if (!s.isNormalized()) throw InvalidArgument("numbering expansion needs normalized labels");
    auto ins = increasingTuples(q, s.inSize());
    auto outs = increasingTuples(q, s.outSize());
    for (const auto& in : ins)
      for (const auto& o : outs) {
        Slice r = renumbered(s, in, o);
        if (keep && !keep(r)) continue;
        auto id = out.addVertex(out.internLabel(r), sg.total(v), sg.layer(v));
        out.setInitial(id, sg.isInitial(v));
        out.setFinal(id, sg.isFinal(v));
        copies[v][in].emplace_back(id, o);
      }
  }
  for (std::uint32_t v = 0; v < sg.vertexCount(); ++v)
    for (auto w : sg.successors(v))
      for (const auto& [in, list] : copies[v])
        for (const auto& [id, o] : list) {
          auto it = copies[w].find(o);
          if (it == copies[w].end()) continue;
          for (const auto& [target, unused] : it->second) out.addEdge(id, target);
        }
  return out;
}

std::vector<Slice> allWeightings(const Slice& s, const WeightSemigroup& omega) {
  std::vector<Slice> out;
  const std::size_t m = s.edges().size();
  std::vector<Weight> w(m, 0);
  while (true) {
    Slice r;
    for (const SliceVertex& v : s.vertices()) {
      if (v.role == Role::In) r.addIn(v.number);
      else if (v.role == Role::Out) r.addOut(v.number);
      else r.addCenter(v.label, v.origin);
    }
    for (std::size_t i = 0; i < m; ++i) {
      const SliceEdge& e = s.edge(static_cast<std::uint32_t>(i));
      r.addEdge(e.source, e.target, e.label, w[i], e.origin, e.tag);
    }
    out.push_back(std::move(r));
    std::size_t i = 0;
    while (i < m && ++w[i] == omega.size()) w[i++] = 0;
    if (i == m) break;
  }
  return out;
}

SliceGraph weightExpansion(const SliceGraph& sg, const WeightSemigroup& omega, const WeightingSource& weightings) {
  SliceGraph out(sg.c(), sg.q());
  out.setOmega(omega);
  std::vector<std::optional<std::vector<std::uint32_t>>> variants(sg.labelCount());
  auto weighted = [&](std::uint32_t labelId) -> const std::vector<std::uint32_t>& {
    auto& slot = variants[labelId];
    if (!slot) {
      slot.emplace();
      const Slice& base = sg.labelSlice(labelId);
      for (const Slice& s : weightings ? weightings(base) : allWeightings(base, omega)) slot->push_back(out.internLabel(s));
    }
    return *slot;
  };
  using Key = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;  // base vertex, label, total
  std::unordered_map<Key, std::uint32_t, TripleHash> index;
  std::deque<std::pair<std::uint32_t, std::uint32_t>> queue;  // (base vertex, new vertex)
  auto visit = [&](std::uint32_t base, std::uint32_t label, Weight tot) {
    Key key{base, label, tot};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    auto id = out.addVertex(label, tot, sg.layer(base));
    out.setFinal(id, sg.isFinal(base));
    index.emplace(key, id);
    queue.emplace_back(base, id);
    return id;
  };
  for (auto v : sg.initials())
    for (auto label : weighted(sg.labelId(v))) {
      auto id = visit(v, label, completedWeight(out.labelSlice(label), omega));
      out.setInitial(id);
    }
  while (!queue.empty()) {
    auto [base, id] = queue.front();
    queue.pop_front();
    // Copied: interning below may reallocate the label storage.
    const Slice s = out.label(id);
    const Weight tot = *out.total(id);
    for (auto w : sg.successors(base))
      for (auto label : weighted(sg.labelId(w))) {
        const Slice& t = out.labelSlice(label);
        if (!canGlue(s, t)) continue;
        out.addEdge(id, visit(w, label, omega.combine(tot, completedWeight(t, omega))));
      }
  }
  return out;
}

SliceGraph counterExpansion(const SliceGraph& sg, std::size_t l) {
  SliceGraph out(sg.c(), sg.q());
  if (sg.omega()) out.setOmega(*sg.omega());
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::deque<std::pair<std::uint32_t, std::uint32_t>> queue;
  std::vector<std::uint32_t> labelMap(sg.labelCount(), UINT32_MAX);
  std::vector<std::uint32_t> count;
  auto visit = [&](std::uint32_t base, std::uint32_t k) {
    std::uint64_t key = (std::uint64_t{base} << 32) | k;
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    auto& label = labelMap[sg.labelId(base)];
    if (label == UINT32_MAX) label = out.internLabel(sg.label(base));
    auto id = out.addVertex(label, sg.total(base), sg.layer(base));
    out.setFinal(id, sg.isFinal(base) && k == l);
    count.push_back(k);
    index.emplace(key, id);
    queue.emplace_back(base, id);
    return id;
  };
  for (auto v : sg.initials()) {
    std::uint32_t k = hasCenter(sg.label(v)) ? 1 : 0;
    if (k <= l) out.setInitial(visit(v, k));
  }
  while (!queue.empty()) {
    auto [base, id] = queue.front();
    queue.pop_front();
    for (auto w : sg.successors(base)) {
      std::uint32_t k = count[id] + (hasCenter(sg.label(w)) ? 1 : 0);
      if (k <= l) out.addEdge(id, visit(w, k));
    }
  }
  return out.trimmed();
}

SliceGraph intersect(const SliceGraph& a, const SliceGraph& b) {
  if (a.q() && b.q() && a.q() != b.q())
    throw InvalidArgument("slice graphs over different numberings (q=" + std::to_string(a.q()) + " vs " +
                          std::to_string(b.q()) + ")");
  std::unordered_map<std::string, std::uint32_t> keys;
  auto keyIds = [&keys](const SliceGraph& g) {
    std::vector<std::uint32_t> ids(g.labelCount());
    for (std::uint32_t l = 0; l < g.labelCount(); ++l)
      ids[l] = keys.emplace(matchKey(g.labelSlice(l)), static_cast<std::uint32_t>(keys.size())).first->second;
    return ids;
  };
  auto aKey = keyIds(a);
  auto bKey = keyIds(b);
  SliceGraph out(std::max(a.c(), b.c()), std::max(a.q(), b.q()));
  if (a.omega()) out.setOmega(*a.omega());
  else if (b.omega()) out.setOmega(*b.omega());
  std::vector<std::uint32_t> labelMap(a.labelCount(), UINT32_MAX);
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::deque<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> queue;
  auto visit = [&](std::uint32_t u, std::uint32_t w) {
    std::uint64_t key = (std::uint64_t{u} << 32) | w;
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    auto& label = labelMap[a.labelId(u)];
    if (label == UINT32_MAX) label = out.internLabel(a.label(u));
    auto id = out.addVertex(label, a.total(u) ? a.total(u) : b.total(w), a.layer(u) ? a.layer(u) : b.layer(w));
    out.setFinal(id, a.isFinal(u) && b.isFinal(w));
    index.emplace(key, id);
    queue.emplace_back(u, w, id);
    return id;
  };
  std::unordered_multimap<std::uint32_t, std::uint32_t> bInitials;
  for (auto w : b.initials()) bInitials.emplace(bKey[b.labelId(w)], w);
  for (auto u : a.initials()) {
    auto [lo, hi] = bInitials.equal_range(aKey[a.labelId(u)]);
    for (auto it = lo; it != hi; ++it) out.setInitial(visit(u, it->second));
  }
  while (!queue.empty()) {
    auto [u, w, id] = queue.front();
    queue.pop_front();
    std::unordered_multimap<std::uint32_t, std::uint32_t> bSucc;
    for (auto y : b.successors(w)) bSucc.emplace(bKey[b.labelId(y)], y);
    for (auto x : a.successors(u)) {
      auto [lo, hi] = bSucc.equal_range(aKey[a.labelId(x)]);
      for (auto it = lo; it != hi; ++it) out.addEdge(id, visit(x, it->second));
    }
  }
  return out.trimmed();
}

std::optional<Weight> maximumFinalTotal(const SliceGraph& sg) {
  std::vector<bool> seen(sg.vertexCount(), false);
  std::vector<std::uint32_t> stack = sg.initials();
  for (auto v : stack) seen[v] = true;
  std::optional<Weight> best;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (sg.isFinal(v)) {
      if (!sg.total(v)) throw InvalidArgument("final vertex without a running total");
      if (!best || *sg.total(v) > *best) best = sg.total(v);
    }
    for (auto w : sg.successors(v))
      if (!seen[w]) seen[w] = true, stack.push_back(w);
  }
  return best;
}

SliceGraph pruneNonMaximalFinals(const SliceGraph& sg) {
  auto best = maximumFinalTotal(sg);
  SliceGraph out = sg;
  if (!best) return out.trimmed();
  for (auto v : sg.finals())
    if (sg.total(v) != best) out.setFinal(v, false);
  return out.trimmed();
}

SliceGraph minimizeSliceGraph(const SliceGraph& input) {
  SliceGraph sg = input.trimmed();
  const std::size_t n = sg.vertexCount();
  std::vector<std::uint32_t> cls(n);
  {
    std::map<std::tuple<std::string, bool, std::optional<Weight>>, std::uint32_t> initial;
    for (std::uint32_t v = 0; v < n; ++v)
      cls[v] = initial.emplace(std::make_tuple(sg.labelKey(sg.labelId(v)), sg.isFinal(v), sg.total(v)),
                               static_cast<std::uint32_t>(initial.size()))
                   .first->second;
  }
  std::size_t classes = 0;
  while (true) {
    std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::uint32_t> refined;
    std::vector<std::uint32_t> next(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      std::vector<std::uint32_t> succ;
      for (auto w : sg.successors(v)) succ.push_back(cls[w]);
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
      next[v] = refined.emplace(std::make_pair(cls[v], std::move(succ)), static_cast<std::uint32_t>(refined.size()))
                    .first->second;
    }
    cls = std::move(next);
    if (refined.size() == classes) break;
    classes = refined.size();
  }
  SliceGraph out(sg.c(), sg.q());
  if (sg.omega()) out.setOmega(*sg.omega());
  std::vector<std::uint32_t> rep(classes, UINT32_MAX);
  for (std::uint32_t v = 0; v < n; ++v)
    if (rep[cls[v]] == UINT32_MAX) {
      rep[cls[v]] = out.addVertex(out.internLabel(sg.label(v)), sg.total(v), sg.layer(v));
      out.setFinal(rep[cls[v]], sg.isFinal(v));
    }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (sg.isInitial(v)) out.setInitial(rep[cls[v]]);
    for (auto w : sg.successors(v)) out.addEdge(rep[cls[v]], rep[cls[w]]);
  }
  return out;
}

DeterminismReport checkDeterministic(const SliceGraph& sg) {
  DeterminismReport report;
  std::unordered_map<std::string, std::uint32_t> seen;
  for (auto v : sg.initials()) {
    auto [it, fresh] = seen.emplace(sg.labelKey(sg.labelId(v)), v);
    if (!fresh) return DeterminismReport{false, std::nullopt, it->second, v};
  }
  for (std::uint32_t v = 0; v < sg.vertexCount(); ++v) {
    seen.clear();
    for (auto w : sg.successors(v)) {
      auto [it, fresh] = seen.emplace(sg.labelKey(sg.labelId(w)), w);
      if (!fresh) return DeterminismReport{false, v, it->second, w};
    }
  }
  return report;
}

BigCount countAcceptingPaths(const SliceGraph& sg) {
  const std::size_t n = sg.vertexCount();
  std::vector<std::size_t> indegree(n, 0);
  for (std::uint32_t v = 0; v < n; ++v)
    for (auto w : sg.successors(v)) ++indegree[w];
  std::vector<std::uint32_t> order;
  order.reserve(n);
  for (std::uint32_t v = 0; v < n; ++v)
    if (indegree[v] == 0) order.push_back(v);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto w : sg.successors(order[i]))
      if (--indegree[w] == 0) order.push_back(w);
  if (order.size() != n) throw InvalidArgument("countAcceptingPaths: slice graph has a cycle");
  if (auto det = checkDeterministic(sg); !det.deterministic)
    throw InvalidArgument("countAcceptingPaths: slice graph is not deterministic");
  std::vector<BigCount> ways(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    BigCount w = sg.isFinal(*it) ? 1 : 0;
    for (auto x : sg.successors(*it)) w += ways[x];
    ways[*it] = std::move(w);
  }
  BigCount total = 0;
  for (auto v : sg.initials()) total += ways[v];
  return total;
}

std::vector<std::vector<std::uint32_t>> acceptingPaths(const SliceGraph& sg, std::size_t cap) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> path;
  std::function<void(std::uint32_t)> dfs = [&](std::uint32_t v) {
    if (out.size() >= cap) return;
    if (path.size() > sg.vertexCount()) throw InvalidArgument("acceptingPaths: slice graph has a cycle");
    path.push_back(v);
    if (sg.isFinal(v)) out.push_back(path);
    for (auto w : sg.successors(v)) dfs(w);
    path.pop_back();
  };
  for (auto v : sg.initials()) dfs(v);
  return out;
}

bool acceptsString(const SliceGraph& sg, const std::vector<Slice>& word) {
  if (word.empty()) return false;
  std::vector<std::string> keys;
  for (const Slice& s : word) keys.push_back(matchKey(s));
  std::vector<std::string> labelMatch(sg.labelCount());
  for (std::uint32_t l = 0; l < sg.labelCount(); ++l) labelMatch[l] = matchKey(sg.labelSlice(l));
  std::vector<std::uint32_t> current;
  for (auto v : sg.initials())
    if (labelMatch[sg.labelId(v)] == keys[0]) current.push_back(v);
  for (std::size_t i = 1; i < word.size() && !current.empty(); ++i) {
    std::vector<std::uint32_t> next;
    for (auto v : current)
      for (auto w : sg.successors(v))
        if (labelMatch[sg.labelId(w)] == keys[i]) next.push_back(w);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
  }
  return std::any_of(current.begin(), current.end(), [&](auto v) { return sg.isFinal(v); });
}

std::string serializeSliceGraph(const SliceGraph& sg) {
  const std::size_t n = sg.vertexCount();
  std::vector<std::string> text(n);
  std::vector<std::tuple<std::int64_t, std::string, std::int64_t, int, std::uint32_t>> keyed;
  for (std::uint32_t v = 0; v < n; ++v) {
    text[v] = serializeSlice(sg.label(v));
    int flags = (sg.isInitial(v) ? 2 : 0) | (sg.isFinal(v) ? 1 : 0);
    keyed.emplace_back(sg.layer(v) ? std::int64_t{*sg.layer(v)} : -1, text[v],
                       sg.total(v) ? std::int64_t{*sg.total(v)} : -1, flags, v);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::uint32_t> rank(n);
  for (std::uint32_t i = 0; i < n; ++i) rank[std::get<4>(keyed[i])] = i;
  std::ostringstream out;
  out << "slicegraph 1\n";
  out << "meta c=" << sg.c() << " q=" << sg.q() << '\n';
  out << "semigroup ";
  if (sg.omega() && sg.omega()->kind() == WeightSemigroup::Kind::BoundedSum) out << sg.omega()->describe() << '\n';
  else out << "-\n";
  out << "vertices " << n << '\n';
  for (std::uint32_t i = 0; i < n; ++i) {
    auto v = std::get<4>(keyed[i]);
    out << i << " layer=" << (sg.layer(v) ? std::to_string(*sg.layer(v)) : "-")
        << " total=" << (sg.total(v) ? std::to_string(*sg.total(v)) : "-") << " flags=";
    std::string flags = std::string(sg.isInitial(v) ? "I" : "") + (sg.isFinal(v) ? "F" : "");
    out << (flags.empty() ? "-" : flags) << ' ' << text[v] << '\n';
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t v = 0; v < n; ++v)
    for (auto w : sg.successors(v)) edges.emplace_back(rank[v], rank[w]);
  std::sort(edges.begin(), edges.end());
  out << "edges " << edges.size() << '\n';
  for (auto [a, b] : edges) out << a << ' ' << b << '\n';
  return out.str();
}

SliceGraph parseSliceGraph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineNo = 0;
  auto next = [&]() {
    if (!std::getline(in, line)) throw ParseError("unexpected end of slice graph", lineNo + 1);
    ++lineNo;
    return line;
  };
  if (next() != "slicegraph 1") throw ParseError("expected 'slicegraph 1'", lineNo);
  std::size_t c = 0, q = 0;
  if (std::sscanf(next().c_str(), "meta c=%zu q=%zu", &c, &q) != 2) throw ParseError("bad meta line", lineNo);
  SliceGraph sg(c, q);
  std::string semigroup = next();
  if (semigroup.rfind("semigroup ", 0) != 0) throw ParseError("expected semigroup line", lineNo);
  semigroup = semigroup.substr(10);
  if (semigroup != "-") {
    if (semigroup.rfind("boundedSum(", 0) != 0) throw ParseError("unsupported semigroup", lineNo);
    sg.setOmega(WeightSemigroup::boundedSum(
        static_cast<std::uint32_t>(std::stoul(semigroup.substr(11, semigroup.size() - 12)))));
  }
  std::size_t n = 0, m = 0;
  if (std::sscanf(next().c_str(), "vertices %zu", &n) != 1) throw ParseError("expected vertices line", lineNo);
  for (std::size_t i = 0; i < n; ++i) {
    std::istringstream row(next());
    std::string id, layer, total, flags, slice;
    row >> id >> layer >> total >> flags >> slice;
    if (id != std::to_string(i) || layer.rfind("layer=", 0) || total.rfind("total=", 0) || flags.rfind("flags=", 0))
      throw ParseError("bad vertex line", lineNo);
    auto field = [](const std::string& s, std::size_t at) -> std::optional<std::uint32_t> {
      auto v = s.substr(at);
      if (v == "-") return std::nullopt;
      return static_cast<std::uint32_t>(std::stoul(v));
    };
    Slice s;
    try {
      s = parseSlice(slice);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), lineNo);
    }
    auto v = sg.addVertex(sg.internLabel(s), field(total, 6), field(layer, 6));
    sg.setInitial(v, flags.find('I') != std::string::npos);
    sg.setFinal(v, flags.find('F') != std::string::npos);
  }
  if (std::sscanf(next().c_str(), "edges %zu", &m) != 1) throw ParseError("expected edges line", lineNo);
  for (std::size_t i = 0; i < m; ++i) {
    std::uint32_t a = 0, b = 0;
    if (std::sscanf(next().c_str(), "%u %u", &a, &b) != 2) throw ParseError("bad edge line", lineNo);
    sg.addEdge(a, b);
  }
  return sg;
}

}  // namespace slicecount
