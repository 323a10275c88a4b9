#include "slicecount/digraph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include "slicecount/errors.hpp"

namespace slicecount {

Digraph::Digraph(std::size_t vertexCount, WeightSemigroup omega)
    : vertexLabels_(vertexCount, kDefaultLabel),
      out_(vertexCount),
      in_(vertexCount),
      omega_(std::move(omega)) {}

VertexId Digraph::addVertex(std::string label) {
  vertexLabels_.push_back(std::move(label));
  out_.emplace_back();
  in_.emplace_back();
  return static_cast<VertexId>(vertexLabels_.size() - 1);
}

EdgeId Digraph::addEdge(VertexId source, VertexId target, std::string label,
                        std::optional<Weight> weight) {
  if (source >= vertexCount() || target >= vertexCount())
    throw InvalidArgument("edge endpoint is not a vertex");
  Weight w = weight.value_or(omega_.identity());
  if (w >= omega_.size()) throw InvalidArgument("edge weight outside the semigroup");
  auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(Edge{source, target, std::move(label), w});
  out_[source].push_back(id);
  in_[target].push_back(id);
  return id;
}

void Digraph::setVertexLabel(VertexId v, std::string label) { vertexLabels_.at(v) = std::move(label); }

void Digraph::setEdgeWeight(EdgeId e, Weight w) {
  if (w >= omega_.size()) throw InvalidArgument("edge weight outside the semigroup");
  edges_.at(e).weight = w;
}

void Digraph::setSemigroup(WeightSemigroup omega) {
  for (const Edge& e : edges_)
    if (e.weight >= omega.size()) throw InvalidArgument("existing edge weight outside the semigroup");
  omega_ = std::move(omega);
}

Weight Digraph::totalWeight() const {
  Weight total = omega_.identity();
  for (const Edge& e : edges_) total = omega_.combine(total, e.weight);
  return total;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> tokens;
  for (std::string t; ss >> t;) tokens.push_back(t);
  return tokens;
}

std::uint64_t parseCount(const std::string& token, std::size_t lineNo, const char* what) {
  std::uint64_t value = 0;
  std::size_t used = 0;
  try {
    if (token.empty() || token[0] == '-') throw std::invalid_argument(what);
    value = std::stoull(token, &used);
  } catch (const std::exception&) {
    throw ParseError(std::string("expected nonnegative integer for ") + what + ", got '" + token + "'",
                     lineNo);
  }
  if (used != token.size())
    throw ParseError(std::string("trailing characters in ") + what + " '" + token + "'", lineNo);
  return value;
}

}  // namespace

Digraph parseDigraph(std::istream& in, const WeightSemigroup& omega) {
  std::string line;
  std::size_t lineNo = 0;
  std::optional<Digraph> g;
  std::vector<bool> labeled;
  std::uint64_t expectedEdges = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!g) {
      if (tokens.size() != 2) throw ParseError("header must be 'n m'", lineNo);
      auto n = parseCount(tokens[0], lineNo, "vertex count");
      expectedEdges = parseCount(tokens[1], lineNo, "edge count");
      if (n > (1u << 24)) throw ParseError("vertex count too large", lineNo);
      g.emplace(static_cast<std::size_t>(n), omega);
      labeled.assign(n, false);
      continue;
    }
    if (tokens.size() < 2 || tokens.size() > 5)
      throw ParseError("edge line needs 2 to 5 fields", lineNo);
    auto s = parseCount(tokens[0], lineNo, "source");
    auto t = parseCount(tokens[1], lineNo, "target");
    if (s >= g->vertexCount() || t >= g->vertexCount())
      throw ParseError("dangling vertex reference " + std::to_string(s >= g->vertexCount() ? s : t),
                       lineNo);
    std::optional<Weight> weight;
    const bool hasLabels = tokens.size() >= 4;
    const bool hasWeight = tokens.size() == 3 || tokens.size() == 5;
    if (hasWeight) {
      try {
        weight = omega.parse(tokens.back());
      } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), lineNo);
      }
    }
    if (hasLabels) {
      const VertexId ends[2] = {static_cast<VertexId>(s), static_cast<VertexId>(t)};
      for (int i = 0; i < 2; ++i) {
        VertexId v = ends[i];
        const std::string& label = tokens[2 + i];
        if (labeled[v] && g->vertexLabel(v) != label)
          throw ParseError("conflicting labels for vertex " + std::to_string(v), lineNo);
        g->setVertexLabel(v, label);
        labeled[v] = true;
      }
    }
    if (g->edgeCount() == expectedEdges)
      throw ParseError("more edge lines than declared (" + std::to_string(expectedEdges) + ")", lineNo);
    g->addEdge(static_cast<VertexId>(s), static_cast<VertexId>(t), kDefaultLabel, weight);
  }
  if (!g) throw ParseError("missing header 'n m'", lineNo == 0 ? 1 : lineNo);
  if (g->edgeCount() != expectedEdges)
    throw ParseError("declared " + std::to_string(expectedEdges) + " edges but found " +
                         std::to_string(g->edgeCount()),
                     lineNo);
  return std::move(*g);
}

Digraph parseDigraph(const std::string& text, const WeightSemigroup& omega) {
  std::istringstream in(text);
  return parseDigraph(in, omega);
}

Digraph loadDigraph(const std::filesystem::path& path, const WeightSemigroup& omega) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return parseDigraph(in, omega);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), e.line(), e.column(), path.string());
  }
}

std::string formatDigraph(const Digraph& g) {
  std::ostringstream out;
  out << g.vertexCount() << ' ' << g.edgeCount() << '\n';
  bool anyLabel = false;
  for (VertexId v = 0; v < g.vertexCount(); ++v) anyLabel |= g.vertexLabel(v) != kDefaultLabel;
  bool anyWeight = false;
  for (const Edge& e : g.edges()) anyWeight |= e.weight != g.semigroup().identity();
  for (const Edge& e : g.edges()) {
    out << e.source << ' ' << e.target;
    if (anyLabel) out << ' ' << g.vertexLabel(e.source) << ' ' << g.vertexLabel(e.target);
    if (anyWeight) out << ' ' << g.semigroup().name(e.weight);
    out << '\n';
  }
  return out.str();
}

Ordering parseOrdering(const std::string& text) {
  Ordering ordering;
  std::size_t lineNo = 0;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (const auto& token : tokenize(line))
      ordering.push_back(static_cast<VertexId>(parseCount(token, lineNo, "vertex id")));
  }
  return ordering;
}

Ordering loadOrdering(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parseOrdering(buffer.str());
}

std::string formatOrdering(const Ordering& ordering) {
  std::string out;
  for (std::size_t i = 0; i < ordering.size(); ++i)
    out += (i ? " " : "") + std::to_string(ordering[i]);
  return out;
}

void requirePermutation(const Digraph& g, const Ordering& ordering) {
  if (ordering.size() != g.vertexCount())
    throw InvalidArgument("ordering has " + std::to_string(ordering.size()) + " entries, graph has " +
                          std::to_string(g.vertexCount()) + " vertices");
  std::vector<bool> seen(ordering.size(), false);
  for (VertexId v : ordering) {
    if (v >= ordering.size() || seen[v])
      throw InvalidArgument("ordering is not a permutation (vertex " + std::to_string(v) + ")");
    seen[v] = true;
  }
}

Ordering identityOrdering(std::size_t n) {
  Ordering ordering(n);
  std::iota(ordering.begin(), ordering.end(), VertexId{0});
  return ordering;
}

std::vector<std::size_t> positions(const Ordering& ordering) {
  std::vector<std::size_t> pos(ordering.size());
  for (std::size_t i = 0; i < ordering.size(); ++i) pos[ordering[i]] = i;
  return pos;
}

std::optional<Ordering> topologicalOrdering(const Digraph& g) {
  const std::size_t n = g.vertexCount();
  std::vector<std::size_t> indegree(n, 0);
  for (const Edge& e : g.edges()) ++indegree[e.target];
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
  for (VertexId v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  Ordering order;
  while (!ready.empty()) {
    VertexId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (EdgeId e : g.outEdges(v))
      if (--indegree[g.edge(e).target] == 0) ready.push(g.edge(e).target);
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

bool isDag(const Digraph& g) { return topologicalOrdering(g).has_value(); }

std::vector<EdgeId> cutEdges(const Digraph& g, const Ordering& ordering, std::size_t i) {
  requirePermutation(g, ordering);
  if (i < 1 || i >= std::max<std::size_t>(ordering.size(), 1))
    throw InvalidArgument("cut index " + std::to_string(i) + " out of range");
  auto pos = positions(ordering);
  std::vector<EdgeId> result;
  for (EdgeId e = 0; e < g.edgeCount(); ++e) {
    bool s = pos[g.edge(e).source] < i;
    bool t = pos[g.edge(e).target] < i;
    if (s != t) result.push_back(e);
  }
  return result;
}

std::size_t cutWidth(const Digraph& g, const Ordering& ordering) {
  requirePermutation(g, ordering);
  const std::size_t n = ordering.size();
  if (n <= 1) return 0;
  auto pos = positions(ordering);
  // delta[i] = change in crossing count between cut i and cut i+1.
  std::vector<long> delta(n + 1, 0);
  for (const Edge& e : g.edges()) {
    auto [lo, hi] = std::minmax(pos[e.source], pos[e.target]);
    if (lo == hi) continue;
    delta[lo + 1] += 1;
    delta[hi + 1] -= 1;
  }
  long running = 0;
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    running += delta[i];
    best = std::max(best, static_cast<std::size_t>(running));
  }
  return best;
}

}  // namespace slicecount
