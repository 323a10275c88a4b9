#include "slicecount/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "slicecount/errors.hpp"
#include "slicecount/generators.hpp"
#include "slicecount/oracle.hpp"

namespace slicecount {

namespace {

class Stopwatch {
 public:
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void record(CountResult& r, std::string name, const SliceGraph& sg, const Stopwatch& t) {
  r.stats.push_back(StageStats{std::move(name), sg.vertexCount(), sg.edgeCount(), t.millis()});
}

Digraph effectiveGraph(const CountQuery& q) {
  Digraph g = q.graph.graph;
  if (!q.omega || *q.omega == g.semigroup()) return g;
  if (q.omega->size() != 1)
    throw InvalidArgument("query semigroup " + q.omega->describe() + " differs from the graph's " +
                          g.semigroup().describe());
  for (EdgeId e = 0; e < g.edgeCount(); ++e) g.setEdgeWeight(e, q.omega->identity());
  g.setSemigroup(*q.omega);
  return g;
}

void validateQuery(const CountQuery& q) {
  if (!q.formula) throw InvalidArgument("query without a formula");
  if (q.k < 1) throw InvalidArgument("k must be at least 1");
  if (q.z < 1) throw InvalidArgument("z must be at least 1");
  if (!freeVariables(q.formula).empty()) throw InvalidArgument("query formula must be closed");
  const Digraph& g = q.graph.graph;
  if (q.l && *q.l > g.vertexCount())
    throw InvalidArgument("l = " + std::to_string(*q.l) + " exceeds the vertex count " +
                          std::to_string(g.vertexCount()));
  requirePermutation(g, q.graph.ordering);
}

Weight completedWeight(const Slice& s, const WeightSemigroup& omega) {
  Weight w = omega.identity();
  for (auto e : s.completedEdges()) w = omega.combine(w, s.edge(e).weight);
  return w;
}

Slice withoutOrigins(const Slice& s) {
  Slice r;
  for (const SliceVertex& v : s.vertices()) {
    if (v.role == Role::In) r.addIn(v.number);
    else if (v.role == Role::Out) r.addOut(v.number);
    else r.addCenter(v.label);
  }
  for (const SliceEdge& e : s.edges()) r.addEdge(e.source, e.target, e.label, e.weight, std::nullopt, e.tag);
  return r;
}

std::string shapeKey(const Slice& s) {
  return canonicalForm(s, CanonicalOptions{.origins = false, .weights = false, .tags = false, .labels = true});
}

struct ProductKey {
  std::uint32_t vertex, state, total, count;
  bool operator==(const ProductKey&) const = default;
};
struct ProductKeyHash {
  std::size_t operator()(const ProductKey& k) const {
    std::uint64_t h = k.vertex;
    h = h * 0x9E3779B97F4A7C15ull ^ k.state;
    h = h * 0x9E3779B97F4A7C15ull ^ k.total;
    h = h * 0x9E3779B97F4A7C15ull ^ k.count;
    return std::hash<std::uint64_t>()(h);
  }
};

// Product of the layered sub-slice graph with the automaton, running totals and
// the vertex counter, explored from the initials.
SliceGraph fusedProduct(const SliceGraph& sub, SliceAutomaton& automaton, const WeightSemigroup& omega,
                        std::optional<std::size_t> l) {
  SliceAlphabet& alphabet = *automaton.alphabet();
  std::vector<SymbolId> symbolOf(sub.labelCount());
  for (std::uint32_t id = 0; id < sub.labelCount(); ++id) symbolOf[id] = alphabet.intern(sub.labelSlice(id));
  std::uint32_t lastLayer = 0;
  for (std::uint32_t v = 0; v < sub.vertexCount(); ++v) lastLayer = std::max(lastLayer, sub.layer(v).value_or(0));

  SliceGraph out(sub.c(), sub.q());
  out.setOmega(omega);
  std::vector<std::uint32_t> labelMap(sub.labelCount(), UINT32_MAX);
  std::unordered_map<ProductKey, std::uint32_t, ProductKeyHash> index;
  std::deque<std::pair<ProductKey, std::uint32_t>> queue;

  auto viable = [&](std::uint32_t v, std::uint32_t count) {
    if (!l) return true;
    const std::size_t remaining = lastLayer - sub.layer(v).value_or(0);
    return count <= *l && count + remaining >= *l;
  };
  auto visit = [&](std::uint32_t v, StateId state, Weight total, std::uint32_t count) {
    ProductKey key{v, state, total, count};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    auto& label = labelMap[sub.labelId(v)];
    if (label == UINT32_MAX) label = out.internLabel(sub.label(v));
    auto id = out.addVertex(label, total, sub.layer(v));
    out.setFinal(id, sub.isFinal(v) && automaton.accepting(state) && (!l || count == *l));
    index.emplace(key, id);
    queue.emplace_back(key, id);
    return id;
  };
  const StateId start = automaton.initial();
  for (auto v : sub.initials()) {
    const Slice& s = sub.label(v);
    std::uint32_t count = s.centerCount() > 0 ? 1 : 0;
    if (!viable(v, count)) continue;
    if (auto next = automaton.step(start, symbolOf[sub.labelId(v)]))
      out.setInitial(visit(v, *next, completedWeight(s, omega), count));
  }
  while (!queue.empty()) {
    auto [key, id] = queue.front();
    queue.pop_front();
    for (auto w : sub.successors(key.vertex)) {
      const Slice& t = sub.label(w);
      std::uint32_t count = key.count + (t.centerCount() > 0 ? 1 : 0);
      if (!viable(w, count)) continue;
      auto next = automaton.step(key.state, symbolOf[sub.labelId(w)]);
      if (!next) continue;
      out.addEdge(id, visit(w, *next, omega.combine(key.total, completedWeight(t, omega)), count));
    }
  }
  return out.trimmed();
}

std::vector<SubgraphWitness> witnessesOf(const SliceGraph& sg, std::size_t cap, const WeightSemigroup& omega) {
  std::vector<SubgraphWitness> out;
  for (const auto& path : acceptingPaths(sg, cap)) {
    std::set<VertexId> vs;
    std::set<EdgeId> es;
    for (auto v : path) {
      const Slice& s = sg.label(v);
      for (const SliceVertex& x : s.vertices())
        if (x.role == Role::Center && x.origin) vs.insert(*x.origin);
      for (const SliceEdge& e : s.edges())
        if (e.origin) es.insert(*e.origin);
    }
    Weight w = path.empty() ? omega.identity() : sg.total(path.back()).value_or(omega.identity());
    out.push_back(SubgraphWitness{{vs.begin(), vs.end()}, {es.begin(), es.end()}, w});
  }
  return out;
}

}  // namespace

CountResult countSubgraphs(const CountQuery& query) {
  validateQuery(query);
  const Digraph g = effectiveGraph(query);
  const WeightSemigroup& omega = g.semigroup();
  const OrderedDigraph& og = query.graph;
  CountResult result;

  const bool verified = og.status == BoundStatus::Verified && og.zigzagBound;
  if (!verified)
    result.warnings.push_back("ordering bound is claimed, not verified; the zig-zag condition is checked by the automaton");
  else if (*og.zigzagBound > query.z)
    result.warnings.push_back("ordering has zig-zag number " + std::to_string(*og.zigzagBound) + " > z = " +
                              std::to_string(query.z) + "; subgraphs crossing a cut more than z times are not counted");
  // H is a subgraph of G, so a verified bound <= z already implies ZigZag(z) for H.
  const bool includeZigZag = !(verified && *og.zigzagBound <= query.z);

  Stopwatch total;
  Stopwatch t;
  const UnitDecomposition u = decomposeAlongOrdering(g, og.ordering);
  result.q = u.q;
  result.c = std::min(query.k * query.z, u.q);

  t = Stopwatch();
  SliceGraph sub = buildSubSliceGraph(u, result.c);
  record(result, "SUB", sub, t);

  auto alphabet = std::make_shared<SliceAlphabet>();
  for (std::uint32_t id = 0; id < sub.labelCount(); ++id) alphabet->intern(sub.labelSlice(id));
  auto automaton = saturatedAutomaton(query.formula, query.k, query.z, alphabet, query.compile, includeZigZag);

  SliceGraph product;
  if (!query.staged) {
    t = Stopwatch();
    product = fusedProduct(sub, *automaton, omega, query.l);
    record(result, "product", product, t);
  } else {
    t = Stopwatch();
    SliceGraph sg = automatonSliceGraph(*automaton, result.c);
    record(result, "SG", sg, t);

    std::unordered_set<std::string> hostShapes;
    std::unordered_map<std::string, std::vector<Slice>> hostWeightings;
    std::unordered_set<std::string> seen;
    for (std::uint32_t id = 0; id < sub.labelCount(); ++id) {
      Slice s = withoutOrigins(sub.labelSlice(id));
      auto shape = shapeKey(s);
      hostShapes.insert(shape);
      if (seen.insert(matchKey(s)).second) hostWeightings[shape].push_back(std::move(s));
    }
    t = Stopwatch();
    SliceGraph numbered = numberingExpansion(sg, std::max(u.q, sg.c()),
                                             [&](const Slice& s) { return hostShapes.count(shapeKey(s)) > 0; });
    record(result, "numbering", numbered, t);

    t = Stopwatch();
    SliceGraph weighted = weightExpansion(numbered, omega, [&](const Slice& s) {
      auto it = hostWeightings.find(shapeKey(s));
      return it == hostWeightings.end() ? std::vector<Slice>{} : it->second;
    });
    record(result, "weights", weighted, t);

    t = Stopwatch();
    product = intersect(sub, weighted);
    record(result, "intersection", product, t);
    if (query.l) {
      t = Stopwatch();
      product = counterExpansion(product, *query.l);
      record(result, "counter", product, t);
    }
  }

  result.maxWeight = maximumFinalTotal(product);
  if (query.maximal) {
    t = Stopwatch();
    product = pruneNonMaximalFinals(product);
    record(result, "maximal", product, t);
  }
  t = Stopwatch();
  result.count = countAcceptingPaths(product);
  if (query.witnessCap) result.witnesses = witnessesOf(product, *query.witnessCap, omega);
  result.stats.push_back(StageStats{"count", product.vertexCount(), product.edgeCount(), t.millis()});
  result.stats.push_back(StageStats{"total", 0, 0, total.millis()});
  return result;
}

const std::vector<std::string>& presetNames() {
  static const std::vector<std::string> names{"hamiltonian", "connectedSpanning", "forest", "bipartite"};
  return names;
}

CountQuery presetQuery(const std::string& name, const OrderedDigraph& g, std::size_t k, std::size_t z,
                       std::optional<std::size_t> l) {
  CountQuery q;
  q.graph = g;
  q.k = k;
  q.z = z;
  q.l = l;
  const std::size_t n = g.graph.vertexCount();
  if (name == "hamiltonian") {
    q.formula = fml::macro(MacroKind::HamiltonianCycle);
    q.k = 2;
    q.l = n;
    q.omega = WeightSemigroup::trivial();
  } else if (name == "connectedSpanning") {
    q.formula = fml::macro(MacroKind::Connected);
    q.l = n;
  } else if (name == "forest") {
    q.formula = fml::macro(MacroKind::Forest);
  } else if (name == "bipartite") {
    q.formula = fml::macro(MacroKind::Bipartite);
  } else {
    throw InvalidArgument("unknown preset '" + name + "'");
  }
  return q;
}

AuditReport auditWitnesses(const CountResult& result, const CountQuery& query) {
  AuditReport report;
  const Digraph g = effectiveGraph(query);
  const auto pos = positions(query.graph.ordering);
  std::optional<Weight> best;
  for (const auto& w : result.witnesses) best = best ? std::max(*best, w.weight) : w.weight;
  for (std::size_t i = 0; i < result.witnesses.size(); ++i) {
    const SubgraphWitness& w = result.witnesses[i];
    ++report.checked;
    auto fail = [&](const std::string& why) {
      report.passed = false;
      report.failures.push_back("witness " + std::to_string(i) + ": " + why);
    };
    std::set<VertexId> vs(w.vertices.begin(), w.vertices.end());
    bool wellFormed = vs.size() == w.vertices.size();
    for (VertexId v : w.vertices) wellFormed = wellFormed && v < g.vertexCount();
    for (EdgeId e : w.edges)
      wellFormed = wellFormed && e < g.edgeCount() && vs.count(g.edge(e).source) && vs.count(g.edge(e).target);
    if (!wellFormed) {
      fail("not a subgraph of the input");
      continue;
    }
    oracle::Subgraph h{w.vertices, w.edges};
    Digraph hg = oracle::extract(g, h);
    oracle::Positions hpos;
    for (VertexId v : w.vertices) hpos.push_back(pos[v]);
    if (!oracle::modelCheck(hg, query.formula, &hpos)) fail("does not satisfy the formula");
    if (!oracle::isUnionOfKPaths(hg, query.k)) fail("is not a union of " + std::to_string(query.k) + " paths");
    if (oracle::maxPathCrossings(hg, hpos) > query.z) fail("crosses a cut more than z times");
    if (query.l && w.vertices.size() != *query.l)
      fail("has " + std::to_string(w.vertices.size()) + " vertices, expected " + std::to_string(*query.l));
    if (oracle::subgraphWeight(g, h) != w.weight) fail("reported weight differs from its edge weights");
    if (query.maximal && result.maxWeight && w.weight != *result.maxWeight) fail("weight is not maximal");
    if (query.maximal && best && w.weight != *best) fail("weight is below another witness");
  }
  return report;
}

OracleCount oracleCount(const CountQuery& query) {
  validateQuery(query);
  const Digraph g = effectiveGraph(query);
  oracle::Query q{query.formula, query.k, query.z, query.l, query.maximal, query.witnessCap};
  auto r = oracle::count(g, query.graph.ordering, q);
  OracleCount out;
  out.count = r.count;
  out.maxWeight = r.maxWeight;
  for (const auto& h : r.witnesses) out.witnesses.push_back(SubgraphWitness{h.vertices, h.edges, oracle::subgraphWeight(g, h)});
  return out;
}

std::vector<CorpusEntry> bundledCorpus(std::uint64_t seed, std::size_t size) {
  SeededRng rng(seed);
  std::vector<CorpusEntry> corpus;
  const auto& presets = presetNames();
  for (std::size_t i = 0; i < size; ++i) {
    Digraph g;
    std::string shape;
    bool weighted = false;
    switch (i % 6) {
      case 0: g = randomDigraph(rng, 2 + rng.below(4), 0.35), shape = "digraph"; break;
      case 1: g = randomDag(rng, 3 + rng.below(4), 0.5), shape = "dag"; break;
      case 2: g = cycleDigraph(2 + rng.below(4)), shape = "cycle"; break;
      case 3:
        g = rng.chance(0.5) ? bidirectedComplete(3) : shuffledVertices(rng, pathDigraph(3 + rng.below(3)));
        shape = "small";
        break;
      case 4:
        g = withRandomWeights(rng, randomDigraph(rng, 3 + rng.below(3), 0.4), 7), shape = "weighted";
        weighted = true;
        break;
      default: g = randomDigraph(rng, 4 + rng.below(2), 0.45), shape = "dense"; break;
    }
    const std::size_t n = g.vertexCount();
    OrderedDigraph og;
    if (rng.chance(0.5)) {
      auto search = searchMinDvsnOrdering(g);
      og = verifiedOrdering(g, search.ordering.value_or(identityOrdering(n)));
    } else {
      og = orderingFromDvsn(g, identityOrdering(n));
    }
    const std::string& preset = presets[(i / 6 + i) % presets.size()];
    const std::size_t k = 1 + rng.below(2);
    const std::size_t z = 1 + rng.below(2);
    std::optional<std::size_t> l;
    if (auto pick = rng.below(n + 2); pick <= n) l = pick;
    CorpusEntry e;
    e.preset = preset;
    e.query = presetQuery(preset, og, k, z, l);
    e.query.maximal = weighted;
    std::ostringstream name;
    name << 'c' << std::setw(3) << std::setfill('0') << i << '-' << shape << "-n" << n;
    e.name = name.str();
    corpus.push_back(std::move(e));
  }
  return corpus;
}

namespace {

BenchRow benchOne(const CorpusEntry& e) {
  BenchRow row;
  row.name = e.name;
  row.preset = e.preset;
  row.n = e.query.graph.graph.vertexCount();
  row.m = e.query.graph.graph.edgeCount();
  row.k = e.query.k;
  row.z = e.query.z;
  row.l = e.query.l;
  row.maximal = e.query.maximal;
  try {
    Stopwatch t;
    row.pipeline = countSubgraphs(e.query).count.str();
    row.pipelineMillis = t.millis();
  } catch (const std::exception& ex) {
    row.pipeline = "error";
    row.error = ex.what();
  }
  try {
    Stopwatch t;
    row.oracle = oracleCount(e.query).count.str();
    row.oracleMillis = t.millis();
  } catch (const std::exception& ex) {
    row.oracle = "error";
    if (row.error.empty()) row.error = ex.what();
  }
  row.match = row.error.empty() && row.pipeline == row.oracle;
  return row;
}

}  // namespace

std::vector<BenchRow> runBench(const std::vector<CorpusEntry>& corpus, std::size_t jobs) {
  std::vector<BenchRow> rows(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) rows[i] = benchOne(corpus[i]);
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, corpus.size()));
  std::vector<std::thread> threads;
  for (std::size_t j = 1; j < jobs; ++j) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  return rows;
}

std::string formatBenchTable(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(20) << "name" << std::setw(19) << "preset" << std::right << std::setw(3) << "n"
      << std::setw(4) << "m" << std::setw(3) << "k" << std::setw(3) << "z" << std::setw(4) << "l" << std::setw(5)
      << "max" << std::setw(12) << "pipeline" << std::setw(12) << "oracle" << "  status\n";
  std::size_t mismatches = 0;
  for (const auto& r : rows) {
    out << std::left << std::setw(20) << r.name << std::setw(19) << r.preset << std::right << std::setw(3) << r.n
        << std::setw(4) << r.m << std::setw(3) << r.k << std::setw(3) << r.z << std::setw(4)
        << (r.l ? std::to_string(*r.l) : "-") << std::setw(5) << (r.maximal ? "yes" : "no") << std::setw(12)
        << r.pipeline << std::setw(12) << r.oracle << "  " << (r.match ? "ok" : "MISMATCH");
    if (!r.error.empty()) out << " (" << r.error << ")";
    out << '\n';
    mismatches += r.match ? 0 : 1;
  }
  out << rows.size() << " queries, " << mismatches << " mismatches\n";
  return out.str();
}

}  // namespace slicecount
