#include "slicecount/slice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "slicecount/errors.hpp"

namespace slicecount {

std::uint32_t Slice::addIn(std::uint32_t number) {
  vertices_.push_back(SliceVertex{Role::In, number, kDefaultLabel, std::nullopt});
  return static_cast<std::uint32_t>(vertices_.size() - 1);
}

std::uint32_t Slice::addOut(std::uint32_t number) {
  vertices_.push_back(SliceVertex{Role::Out, number, kDefaultLabel, std::nullopt});
  return static_cast<std::uint32_t>(vertices_.size() - 1);
}

std::uint32_t Slice::addCenter(std::string label, std::optional<VertexId> origin) {
  vertices_.push_back(SliceVertex{Role::Center, 0, std::move(label), origin});
  return static_cast<std::uint32_t>(vertices_.size() - 1);
}

std::uint32_t Slice::addEdge(std::uint32_t source, std::uint32_t target, std::string label, Weight weight,
                             std::optional<EdgeId> origin, std::uint32_t tag) {
  if (source >= vertices_.size() || target >= vertices_.size())
    throw InvalidArgument("slice edge endpoint out of range");
  edges_.push_back(SliceEdge{source, target, std::move(label), weight, origin, tag});
  return static_cast<std::uint32_t>(edges_.size() - 1);
}

void Slice::validate() const {
  std::vector<int> degree(vertices_.size(), 0);
  for (const SliceEdge& e : edges_) {
    const Role rs = vertices_[e.source].role, rt = vertices_[e.target].role;
    if (rs != Role::Center && rs == rt) throw InvalidArgument("slice edge inside one frontier");
    ++degree[e.source];
    if (e.target != e.source) ++degree[e.target];
  }
  std::map<std::pair<Role, std::uint32_t>, int> numbers;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const SliceVertex& x = vertices_[v];
    if (x.role == Role::Center) continue;
    if (x.number == 0) throw InvalidArgument("frontier numbers start at 1");
    if (degree[v] != 1) throw InvalidArgument("frontier vertex must touch exactly one edge");
    if (++numbers[{x.role, x.number}] > 1) throw InvalidArgument("repeated frontier number");
  }
}

std::vector<std::uint32_t> Slice::frontier(Role role) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < vertices_.size(); ++v)
    if (vertices_[v].role == role) out.push_back(v);
  std::sort(out.begin(), out.end(),
            [&](auto a, auto b) { return vertices_[a].number < vertices_[b].number; });
  return out;
}

std::vector<std::uint32_t> Slice::centers() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < vertices_.size(); ++v)
    if (vertices_[v].role == Role::Center) out.push_back(v);
  return out;
}

std::vector<std::uint32_t> Slice::inNumbers() const {
  std::vector<std::uint32_t> out;
  for (auto v : inFrontier()) out.push_back(vertices_[v].number);
  return out;
}

std::vector<std::uint32_t> Slice::outNumbers() const {
  std::vector<std::uint32_t> out;
  for (auto v : outFrontier()) out.push_back(vertices_[v].number);
  return out;
}

std::size_t Slice::inSize() const {
  return std::count_if(vertices_.begin(), vertices_.end(), [](const auto& v) { return v.role == Role::In; });
}

std::size_t Slice::outSize() const {
  return std::count_if(vertices_.begin(), vertices_.end(), [](const auto& v) { return v.role == Role::Out; });
}

std::size_t Slice::centerCount() const {
  return std::count_if(vertices_.begin(), vertices_.end(),
                       [](const auto& v) { return v.role == Role::Center; });
}

bool Slice::isPermutation() const {
  if (centerCount() != 0) return false;
  for (const SliceEdge& e : edges_)
    if (vertices_[e.source].role == vertices_[e.target].role) return false;
  return true;
}

bool Slice::isNormalized() const {
  auto dense = [](const std::vector<std::uint32_t>& numbers) {
    for (std::size_t i = 0; i < numbers.size(); ++i)
      if (numbers[i] != i + 1) return false;
    return true;
  };
  return dense(inNumbers()) && dense(outNumbers());
}

int Slice::orientation(std::uint32_t edge) const {
  const SliceEdge& e = edges_.at(edge);
  const Role rs = vertices_[e.source].role, rt = vertices_[e.target].role;
  if (rt == Role::Out || rs == Role::In) return 1;
  if (rt == Role::In || rs == Role::Out) return -1;
  return 0;
}

std::uint32_t Slice::frontierEdge(std::uint32_t v) const {
  for (std::uint32_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].source == v || edges_[i].target == v) return i;
  throw InvalidArgument("frontier vertex without edge");
}

std::optional<std::uint32_t> Slice::findFrontier(Role role, std::uint32_t number) const {
  for (std::uint32_t v = 0; v < vertices_.size(); ++v)
    if (vertices_[v].role == role && vertices_[v].number == number) return v;
  return std::nullopt;
}

std::vector<std::uint32_t> Slice::completedEdges() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < edges_.size(); ++i)
    if (vertices_[edges_[i].source].role != Role::Out && vertices_[edges_[i].target].role != Role::Out)
      out.push_back(i);
  return out;
}

namespace {

constexpr const char* kReserved = ",;=>@~#^%|\\ \t\r\n";

std::string escape(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::string_view(kReserved).find(static_cast<char>(c)) != std::string_view::npos) {
      static const char* hex = "0123456789ABCDEF";
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 15];
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

std::string unescape(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%') {
      if (i + 2 >= s.size()) throw ParseError("truncated escape in slice");
      out += static_cast<char>(std::stoi(s.substr(i + 1, 2), nullptr, 16));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

std::string vertexRef(const Slice& s, std::uint32_t v, const std::vector<std::uint32_t>& centerRank) {
  const SliceVertex& x = s.vertex(v);
  switch (x.role) {
    case Role::In: return "i" + std::to_string(x.number);
    case Role::Out: return "o" + std::to_string(x.number);
    case Role::Center: return "c" + std::to_string(centerRank[v]);
  }
  return "?";
}

std::string encodeWith(const Slice& s, const std::vector<std::uint32_t>& centerOrder,
                       const CanonicalOptions& opt) {
  std::vector<std::uint32_t> rank(s.vertices().size(), 0);
  for (std::uint32_t i = 0; i < centerOrder.size(); ++i) rank[centerOrder[i]] = i;
  std::string out = "I=";
  auto ins = s.inNumbers();
  for (std::size_t i = 0; i < ins.size(); ++i) out += (i ? "," : "") + std::to_string(ins[i]);
  out += ";C=";
  for (std::size_t i = 0; i < centerOrder.size(); ++i) {
    const SliceVertex& c = s.vertex(centerOrder[i]);
    out += i ? ",v" : "v";
    if (opt.labels) out += escape(c.label);
    if (opt.origins && c.origin) out += "^" + std::to_string(*c.origin);
  }
  out += ";O=";
  auto outs = s.outNumbers();
  for (std::size_t i = 0; i < outs.size(); ++i) out += (i ? "," : "") + std::to_string(outs[i]);
  out += ";E=";
  std::vector<std::string> edges;
  for (const SliceEdge& e : s.edges()) {
    std::string x = vertexRef(s, e.source, rank) + ">" + vertexRef(s, e.target, rank);
    if (opt.labels) x += "@" + escape(e.label);
    if (opt.weights) x += "~" + std::to_string(e.weight);
    if (opt.tags && e.tag) x += "#" + std::to_string(e.tag);
    if (opt.origins && e.origin) x += "^" + std::to_string(*e.origin);
    edges.push_back(std::move(x));
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i < edges.size(); ++i) out += (i ? "," : "") + edges[i];
  return out;
}

// Per-center invariant that does not depend on the order of other centers.
std::string centerInvariant(const Slice& s, std::uint32_t c, const CanonicalOptions& opt) {
  std::vector<std::string> parts;
  for (const SliceEdge& e : s.edges()) {
    if (e.source != c && e.target != c) continue;
    auto end = [&](std::uint32_t v) {
      if (v == c) return std::string("*");
      const SliceVertex& x = s.vertex(v);
      if (x.role == Role::Center) return std::string("c");
      return (x.role == Role::In ? "i" : "o") + std::to_string(x.number);
    };
    std::string p = end(e.source) + ">" + end(e.target);
    if (opt.labels) p += "@" + escape(e.label);
    if (opt.weights) p += "~" + std::to_string(e.weight);
    if (opt.tags) p += "#" + std::to_string(e.tag);
    parts.push_back(std::move(p));
  }
  std::sort(parts.begin(), parts.end());
  const SliceVertex& x = s.vertex(c);
  std::string out = opt.labels ? escape(x.label) : "";
  if (opt.origins && x.origin) out += "^" + std::to_string(*x.origin);
  for (const auto& p : parts) out += "|" + p;
  return out;
}

}  // namespace

std::string canonicalForm(const Slice& s, const CanonicalOptions& opt) {
  auto centers = s.centers();
  if (centers.size() <= 1) return encodeWith(s, centers, opt);
  std::vector<std::pair<std::string, std::uint32_t>> keyed;
  for (auto c : centers) keyed.emplace_back(centerInvariant(s, c, opt), c);
  std::sort(keyed.begin(), keyed.end());
  // Ties are resolved by trying every order inside each tie group.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t permutations = 1;
  for (std::size_t i = 0; i < keyed.size();) {
    std::size_t j = i;
    while (j < keyed.size() && keyed[j].first == keyed[i].first) ++j;
    if (j - i > 1) groups.emplace_back(i, j);
    for (std::size_t f = 2; f <= j - i; ++f) {
      permutations *= f;
      if (permutations > 40320) throw ResourceError("canonicalForm: too many symmetric centers");
    }
    i = j;
  }
  std::vector<std::uint32_t> order;
  for (const auto& [key, c] : keyed) order.push_back(c);
  if (groups.empty()) return encodeWith(s, order, opt);
  std::string best;
  bool first = true;
  // Odometer over the tie groups.
  std::function<void(std::size_t)> explore = [&](std::size_t g) {
    if (g == groups.size()) {
      std::string enc = encodeWith(s, order, opt);
      if (first || enc < best) best = std::move(enc);
      first = false;
      return;
    }
    auto [lo, hi] = groups[g];
    std::sort(order.begin() + lo, order.begin() + hi);
    do {
      explore(g + 1);
    } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  };
  explore(0);
  return best;
}

std::string serializeSlice(const Slice& s) {
  CanonicalOptions opt;
  opt.origins = true;
  return canonicalForm(s, opt);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::uint32_t parseNumber(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("bad number '" + s + "' in slice");
  return static_cast<std::uint32_t>(std::stoul(s));
}

// Splits "body<sep>value" at the last occurrence of sep.
std::optional<std::string> takeSuffix(std::string& s, char sep) {
  auto at = s.rfind(sep);
  if (at == std::string::npos) return std::nullopt;
  std::string value = s.substr(at + 1);
  s.erase(at);
  return value;
}

}  // namespace

Slice parseSlice(const std::string& text) {
  auto sections = split(text, ';');
  if (sections.size() != 4 || sections[0].rfind("I=", 0) != 0 || sections[1].rfind("C=", 0) != 0 ||
      sections[2].rfind("O=", 0) != 0 || sections[3].rfind("E=", 0) != 0)
    throw ParseError("slice must have sections I=;C=;O=;E=");
  Slice s;
  std::map<std::string, std::uint32_t> refs;
  for (const auto& n : split(sections[0].substr(2), ',')) refs["i" + n] = s.addIn(parseNumber(n));
  std::uint32_t centerIndex = 0;
  for (auto c : split(sections[1].substr(2), ',')) {
    if (c.empty() || c[0] != 'v') throw ParseError("center entries start with 'v'");
    std::optional<VertexId> origin;
    if (auto o = takeSuffix(c, '^')) origin = parseNumber(*o);
    refs["c" + std::to_string(centerIndex++)] = s.addCenter(unescape(c.substr(1)), origin);
  }
  for (const auto& n : split(sections[2].substr(2), ',')) refs["o" + n] = s.addOut(parseNumber(n));
  for (auto e : split(sections[3].substr(2), ',')) {
    std::optional<EdgeId> origin;
    std::uint32_t tag = 0;
    Weight weight = 0;
    std::string label = kDefaultLabel;
    if (auto o = takeSuffix(e, '^')) origin = parseNumber(*o);
    if (auto t = takeSuffix(e, '#')) tag = parseNumber(*t);
    if (auto w = takeSuffix(e, '~')) weight = parseNumber(*w);
    if (auto l = takeSuffix(e, '@')) label = unescape(*l);
    auto arrow = e.find('>');
    if (arrow == std::string::npos) throw ParseError("slice edge needs '>'");
    auto src = refs.find(e.substr(0, arrow));
    auto dst = refs.find(e.substr(arrow + 1));
    if (src == refs.end() || dst == refs.end()) throw ParseError("slice edge references unknown vertex");
    s.addEdge(src->second, dst->second, label, weight, origin, tag);
  }
  try {
    s.validate();
  } catch (const InvalidArgument& err) {
    throw ParseError(err.what());
  }
  return s;
}

bool canGlue(const Slice& a, const Slice& b) {
  auto outs = a.outFrontier();
  auto ins = b.inFrontier();
  if (outs.size() != ins.size()) return false;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    if (a.vertex(outs[i]).number != b.vertex(ins[i]).number) return false;
    auto ea = a.frontierEdge(outs[i]);
    auto eb = b.frontierEdge(ins[i]);
    if (a.orientation(ea) != b.orientation(eb)) return false;
    if (a.edge(ea).weight != b.edge(eb).weight) return false;
  }
  return true;
}

Slice compose(const Slice& a, const Slice& b) {
  if (!canGlue(a, b)) throw InvalidArgument("slices cannot be glued");
  Slice r;
  std::vector<std::uint32_t> mapA(a.vertices().size(), UINT32_MAX), mapB(b.vertices().size(), UINT32_MAX);
  for (auto v : a.inFrontier()) mapA[v] = r.addIn(a.vertex(v).number);
  for (auto v : a.centers()) mapA[v] = r.addCenter(a.vertex(v).label, a.vertex(v).origin);
  for (auto v : b.centers()) mapB[v] = r.addCenter(b.vertex(v).label, b.vertex(v).origin);
  for (auto v : b.outFrontier()) mapB[v] = r.addOut(b.vertex(v).number);
  for (const SliceEdge& e : a.edges())
    if (a.vertex(e.source).role != Role::Out && a.vertex(e.target).role != Role::Out)
      r.addEdge(mapA[e.source], mapA[e.target], e.label, e.weight, e.origin, e.tag);
  for (auto v : a.outFrontier()) {
    const SliceEdge& ea = a.edge(a.frontierEdge(v));
    auto w = *b.findFrontier(Role::In, a.vertex(v).number);
    const SliceEdge& eb = b.edge(b.frontierEdge(w));
    std::uint32_t farA = ea.source == v ? ea.target : ea.source;
    std::uint32_t farB = eb.source == w ? eb.target : eb.source;
    auto origin = eb.origin ? eb.origin : ea.origin;
    if (ea.target == v)
      r.addEdge(mapA[farA], mapB[farB], eb.label, eb.weight, origin, eb.tag);
    else
      r.addEdge(mapB[farB], mapA[farA], eb.label, eb.weight, origin, eb.tag);
  }
  for (const SliceEdge& e : b.edges())
    if (b.vertex(e.source).role != Role::In && b.vertex(e.target).role != Role::In)
      r.addEdge(mapB[e.source], mapB[e.target], e.label, e.weight, e.origin, e.tag);
  return r;
}

Slice composeAll(const std::vector<Slice>& slices) {
  Slice r;
  for (std::size_t i = 0; i < slices.size(); ++i) r = i == 0 ? slices[0] : compose(r, slices[i]);
  return r;
}

Slice normalize(const Slice& s) {
  std::map<std::uint32_t, std::uint32_t> inMap, outMap;
  for (auto n : s.inNumbers()) inMap.emplace(n, static_cast<std::uint32_t>(inMap.size() + 1));
  for (auto n : s.outNumbers()) outMap.emplace(n, static_cast<std::uint32_t>(outMap.size() + 1));
  Slice out;
  for (const SliceVertex& v : s.vertices()) {
    if (v.role == Role::In) out.addIn(inMap[v.number]);
    else if (v.role == Role::Out) out.addOut(outMap[v.number]);
    else out.addCenter(v.label, v.origin);
  }
  for (const SliceEdge& e : s.edges()) out.addEdge(e.source, e.target, e.label, e.weight, e.origin, e.tag);
  return out;
}

Slice stripToSymbol(const Slice& s) {
  Slice out;
  for (const SliceVertex& v : s.vertices()) {
    if (v.role == Role::In) out.addIn(v.number);
    else if (v.role == Role::Out) out.addOut(v.number);
    else out.addCenter(v.label);
  }
  for (const SliceEdge& e : s.edges()) out.addEdge(e.source, e.target, e.label);
  return out;
}

Digraph sliceToDigraph(const Slice& s, const WeightSemigroup& omega) {
  if (s.inSize() || s.outSize()) throw InvalidArgument("slice has frontier vertices");
  auto centers = s.centers();
  bool allOrigins = std::all_of(centers.begin(), centers.end(), [&](auto c) { return s.vertex(c).origin; });
  if (allOrigins)
    std::stable_sort(centers.begin(), centers.end(),
                     [&](auto a, auto b) { return *s.vertex(a).origin < *s.vertex(b).origin; });
  std::vector<VertexId> id(s.vertices().size(), 0);
  Digraph g(0, omega);
  for (auto c : centers) id[c] = g.addVertex(s.vertex(c).label);
  std::vector<std::uint32_t> edges(s.edges().size());
  std::iota(edges.begin(), edges.end(), 0u);
  bool edgeOrigins = std::all_of(s.edges().begin(), s.edges().end(), [](const auto& e) { return e.origin; });
  if (edgeOrigins)
    std::stable_sort(edges.begin(), edges.end(),
                     [&](auto a, auto b) { return *s.edge(a).origin < *s.edge(b).origin; });
  for (auto i : edges) {
    const SliceEdge& e = s.edge(i);
    g.addEdge(id[e.source], id[e.target], e.label, e.weight);
  }
  return g;
}

PlusStructure oplusAll(const std::vector<Slice>& slices) {
  PlusStructure p;
  std::vector<std::uint32_t> previousOut;  // indexed by number
  for (std::size_t k = 0; k < slices.size(); ++k) {
    const Slice& s = slices[k];
    if (k > 0 && !canGlue(slices[k - 1], s)) throw InvalidArgument("slices cannot be glued");
    std::vector<std::uint32_t> local(s.vertices().size());
    for (std::uint32_t v = 0; v < s.vertices().size(); ++v) {
      local[v] = static_cast<std::uint32_t>(p.vertices.size());
      p.vertices.push_back({k, s.vertex(v)});
    }
    for (const SliceEdge& e : s.edges()) p.edges.push_back({k, local[e.source], local[e.target], e});
    for (auto v : s.inFrontier()) {
      std::uint32_t n = s.vertex(v).number;
      p.links.emplace_back(previousOut.at(n), local[v]);
    }
    previousOut.assign(1, 0);
    for (auto v : s.outFrontier()) {
      std::uint32_t n = s.vertex(v).number;
      if (previousOut.size() <= n) previousOut.resize(n + 1, 0);
      previousOut[n] = local[v];
    }
  }
  return p;
}

PlusStructure oplus(const Slice& a, const Slice& b) { return oplusAll({a, b}); }

Digraph contractFrontierChains(const PlusStructure& p, const WeightSemigroup& omega) {
  const std::size_t nv = p.vertices.size();
  std::vector<std::int64_t> segmentAt(nv, -1);  // frontier vertex -> its segment
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    for (auto v : {p.edges[i].source, p.edges[i].target})
      if (p.vertices[v].data.role != Role::Center) segmentAt[v] = static_cast<std::int64_t>(i);
  }
  std::vector<std::int64_t> partner(nv, -1);
  for (auto [o, i] : p.links) {
    partner[o] = i;
    partner[i] = o;
  }
  std::vector<std::uint32_t> centers;
  for (std::uint32_t v = 0; v < nv; ++v)
    if (p.vertices[v].data.role == Role::Center) centers.push_back(v);
  bool allOrigins = std::all_of(centers.begin(), centers.end(), [&](auto c) { return p.vertices[c].data.origin; });
  if (allOrigins)
    std::stable_sort(centers.begin(), centers.end(), [&](auto a, auto b) {
      return *p.vertices[a].data.origin < *p.vertices[b].data.origin;
    });
  std::vector<VertexId> id(nv, 0);
  Digraph g(0, omega);
  for (auto c : centers) id[c] = g.addVertex(p.vertices[c].data.label);

  struct Chain {
    std::uint32_t source, target;
    const SliceEdge* final;
    std::optional<EdgeId> origin;
    std::size_t order;
  };
  std::vector<Chain> chains;
  std::vector<bool> used(p.edges.size(), false);
  for (std::size_t start = 0; start < p.edges.size(); ++start) {
    if (used[start]) continue;
    // Walk from a segment touching a center (or any segment of a closed chain) to both ends.
    std::vector<std::size_t> members{start};
    used[start] = true;
    std::vector<std::uint32_t> ends;
    for (auto first : {p.edges[start].source, p.edges[start].target}) {
      std::uint32_t v = first;
      if (p.edges[start].source == p.edges[start].target && first == p.edges[start].target) {
        ends.push_back(v);
        continue;
      }
      while (p.vertices[v].data.role != Role::Center) {
        if (partner[v] < 0) throw InvalidArgument("dangling frontier vertex in chain");
        auto w = static_cast<std::uint32_t>(partner[v]);
        auto seg = static_cast<std::size_t>(segmentAt[w]);
        if (used[seg]) throw InvalidArgument("cyclic frontier chain");
        used[seg] = true;
        members.push_back(seg);
        v = p.edges[seg].source == w ? p.edges[seg].target : p.edges[seg].source;
      }
      ends.push_back(v);
    }
    std::uint32_t source = 0, target = 0;
    bool haveSource = false, haveTarget = false;
    for (auto seg : members) {
      for (auto end : ends) {
        if (p.edges[seg].source == end) source = end, haveSource = true;
        if (p.edges[seg].target == end) target = end, haveTarget = true;
      }
    }
    if (!haveSource || !haveTarget) throw InvalidArgument("incoherent chain orientation");
    std::size_t finalSeg = *std::max_element(members.begin(), members.end(), [&](auto a, auto b) {
      return p.edges[a].slice < p.edges[b].slice;
    });
    std::optional<EdgeId> origin;
    for (auto seg : members)
      if (p.edges[seg].data.origin) origin = p.edges[seg].data.origin;
    chains.push_back({source, target, &p.edges[finalSeg].data, origin, chains.size()});
  }
  bool edgeOrigins = std::all_of(chains.begin(), chains.end(), [](const auto& c) { return c.origin; });
  if (edgeOrigins)
    std::stable_sort(chains.begin(), chains.end(), [](const auto& a, const auto& b) { return *a.origin < *b.origin; });
  for (const Chain& c : chains) g.addEdge(id[c.source], id[c.target], c.final->label, c.final->weight);
  return g;
}

}  // namespace slicecount
