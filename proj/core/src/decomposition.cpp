#include "slicecount/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "slicecount/errors.hpp"

namespace slicecount {

void UnitDecomposition::validate() const {
  if (slices.empty()) throw InvalidArgument("decomposition has no slices");
  for (const Slice& s : slices) {
    s.validate();
    if (!s.isUnit()) throw InvalidArgument("decomposition slice has more than one center");
    for (auto n : s.inNumbers())
      if (n > q) throw InvalidArgument("frontier number exceeds q");
    for (auto n : s.outNumbers())
      if (n > q) throw InvalidArgument("frontier number exceeds q");
  }
  if (!slices.front().isInitial()) throw InvalidArgument("first slice is not initial");
  if (!slices.back().isFinal()) throw InvalidArgument("last slice is not final");
  for (std::size_t i = 1; i < slices.size(); ++i)
    if (!canGlue(slices[i - 1], slices[i]))
      throw InvalidArgument("slices " + std::to_string(i - 1) + " and " + std::to_string(i) + " do not glue");
  if (sourceOrdering) {
    std::size_t next = 0;
    for (const Slice& s : slices)
      for (auto c : s.centers()) {
        auto origin = s.vertex(c).origin;
        if (next >= sourceOrdering->size() || !origin || *origin != (*sourceOrdering)[next])
          throw InvalidArgument("centers do not follow the source ordering");
        ++next;
      }
    if (next != sourceOrdering->size()) throw InvalidArgument("decomposition misses ordered vertices");
  }
}

std::size_t UnitDecomposition::width() const {
  std::size_t w = 0;
  for (const Slice& s : slices) w = std::max(w, s.width());
  return w;
}

UnitDecomposition decomposeAlongOrdering(const Digraph& g, const Ordering& ordering) {
  requirePermutation(g, ordering);
  UnitDecomposition u;
  u.sourceOrdering = ordering;
  u.omega = g.semigroup();
  const std::size_t n = ordering.size();
  if (n == 0) {
    u.slices.emplace_back();
    return u;
  }
  auto pos = positions(ordering);
  // numbers[i]: (edge, number) for every edge crossing cut i (between positions
  // i-1 and i), sorted by edge id. Numbers run 1..width.
  std::vector<std::vector<std::pair<EdgeId, std::uint32_t>>> numbers(n + 1);
  {
    std::vector<std::vector<std::tuple<std::size_t, std::size_t, EdgeId>>> active(n + 1);
    for (EdgeId e = 0; e < g.edgeCount(); ++e) {
      auto [lo, hi] = std::minmax(pos[g.edge(e).source], pos[g.edge(e).target]);
      for (std::size_t i = lo + 1; i <= hi; ++i) active[i].emplace_back(lo, hi, e);
    }
    for (std::size_t i = 1; i < n; ++i) {
      std::sort(active[i].begin(), active[i].end());
      for (std::size_t k = 0; k < active[i].size(); ++k)
        numbers[i].emplace_back(std::get<2>(active[i][k]), static_cast<std::uint32_t>(k + 1));
      std::sort(numbers[i].begin(), numbers[i].end());
      u.q = std::max(u.q, active[i].size());
    }
  }
  constexpr std::uint32_t kNone = UINT32_MAX;
  // Slice vertex of each edge on the in and out frontier of the current slice.
  std::vector<std::uint32_t> inVertex(g.edgeCount(), kNone), outVertex(g.edgeCount(), kNone);
  for (std::size_t i = 0; i < n; ++i) {
    const VertexId v = ordering[i];
    Slice s;
    for (auto [e, num] : numbers[i]) inVertex[e] = s.addIn(num);
    const std::uint32_t center = s.addCenter(g.vertexLabel(v), v);
    for (auto [e, num] : numbers[i + 1]) outVertex[e] = s.addOut(num);
    // Crossing edges plus edges at v, in id order.
    std::vector<EdgeId> touching;
    for (const auto& entry : numbers[i]) touching.push_back(entry.first);
    for (EdgeId e : g.outEdges(v)) touching.push_back(e);
    for (EdgeId e : g.inEdges(v)) touching.push_back(e);
    std::sort(touching.begin(), touching.end());
    touching.erase(std::unique(touching.begin(), touching.end()), touching.end());
    std::uint32_t loopTag = 0;
    for (EdgeId e : touching) {
      const Edge& edge = g.edge(e);
      const std::size_t ps = pos[edge.source], pt = pos[edge.target];
      if (ps == i && pt == i) {
        s.addEdge(center, center, edge.label, edge.weight, e, loopTag++);
        continue;
      }
      auto endpoint = [&](std::size_t p) { return p == i ? center : p < i ? inVertex[e] : outVertex[e]; };
      s.addEdge(endpoint(ps), endpoint(pt), edge.label, edge.weight, e);
    }
    for (auto [e, num] : numbers[i]) inVertex[e] = kNone;
    for (auto [e, num] : numbers[i + 1]) outVertex[e] = kNone;
    u.slices.push_back(std::move(s));
  }
  return u;
}

Digraph composeAll(const UnitDecomposition& u) {
  return sliceToDigraph(composeAll(u.slices), u.omega);
}

std::vector<Slice> enumerateNumberedSubSlices(const Slice& s, std::size_t c) {
  if (!s.isUnit()) throw InvalidArgument("sub-slice enumeration needs a unit slice");
  const auto& edges = s.edges();
  const auto centers = s.centers();
  struct Info {
    bool center, in, out;
  };
  std::vector<Info> info;
  for (const SliceEdge& e : edges) {
    Role a = s.vertex(e.source).role, b = s.vertex(e.target).role;
    info.push_back({a == Role::Center || b == Role::Center, a == Role::In || b == Role::In,
                    a == Role::Out || b == Role::Out});
  }
  std::vector<Slice> result;
  std::vector<bool> chosen(edges.size(), false);
  auto emit = [&](bool keepCenter) {
    Slice sub;
    std::vector<std::uint32_t> map(s.vertices().size(), UINT32_MAX);
    std::vector<bool> keep(s.vertices().size(), false);
    if (keepCenter) keep[centers.front()] = true;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (chosen[i]) keep[edges[i].source] = keep[edges[i].target] = true;
    for (auto v : s.inFrontier())
      if (keep[v]) map[v] = sub.addIn(s.vertex(v).number);
    for (auto v : centers)
      if (keep[v]) map[v] = sub.addCenter(s.vertex(v).label, s.vertex(v).origin);
    for (auto v : s.outFrontier())
      if (keep[v]) map[v] = sub.addOut(s.vertex(v).number);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (chosen[i]) {
        const SliceEdge& e = edges[i];
        sub.addEdge(map[e.source], map[e.target], e.label, e.weight, e.origin, e.tag);
      }
    result.push_back(std::move(sub));
  };
  std::function<void(std::size_t, bool, std::size_t, std::size_t)> recurse =
      [&](std::size_t i, bool keepCenter, std::size_t ins, std::size_t outs) {
        if (i == edges.size()) {
          emit(keepCenter);
          return;
        }
        chosen[i] = false;
        recurse(i + 1, keepCenter, ins, outs);
        if (info[i].center && !keepCenter) return;
        std::size_t ni = ins + (info[i].in ? 1 : 0), no = outs + (info[i].out ? 1 : 0);
        if (ni > c || no > c) return;
        chosen[i] = true;
        recurse(i + 1, keepCenter, ni, no);
        chosen[i] = false;
      };
  recurse(0, false, 0, 0);
  if (!centers.empty()) recurse(0, true, 0, 0);
  std::vector<std::pair<std::string, std::size_t>> keyed;
  for (std::size_t i = 0; i < result.size(); ++i) keyed.emplace_back(canonicalForm(result[i]), i);
  std::sort(keyed.begin(), keyed.end());
  std::vector<Slice> sorted;
  sorted.reserve(result.size());
  for (const auto& [key, i] : keyed) sorted.push_back(std::move(result[i]));
  return sorted;
}

std::vector<std::uint32_t> cutNumbers(const UnitDecomposition& u, std::size_t k) {
  if (k > u.slices.size()) throw InvalidArgument("cut index out of range");
  if (k == 0 || k == u.slices.size()) return {};
  return u.slices[k - 1].outNumbers();
}

namespace {

std::map<std::uint32_t, std::uint32_t> renaming(const std::vector<std::uint32_t>& old,
                                                const std::vector<std::uint32_t>& fresh) {
  if (old.size() != fresh.size()) throw InvalidArgument("renumbering has wrong length");
  std::map<std::uint32_t, std::uint32_t> map;
  std::vector<std::uint32_t> seen = fresh;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end() || (!seen.empty() && seen.front() == 0))
    throw InvalidArgument("renumbering must be injective into positive numbers");
  for (std::size_t i = 0; i < old.size(); ++i) map[old[i]] = fresh[i];
  return map;
}

Slice renameSide(const Slice& s, Role role, const std::map<std::uint32_t, std::uint32_t>& map) {
  Slice out;
  for (const SliceVertex& v : s.vertices()) {
    if (v.role == Role::Center) out.addCenter(v.label, v.origin);
    else {
      std::uint32_t n = v.role == role ? map.at(v.number) : v.number;
      v.role == Role::In ? out.addIn(n) : out.addOut(n);
    }
  }
  for (const SliceEdge& e : s.edges()) out.addEdge(e.source, e.target, e.label, e.weight, e.origin, e.tag);
  return out;
}

void refreshFlags(UnitDecomposition& u) {
  u.normalized = std::all_of(u.slices.begin(), u.slices.end(), [](const Slice& s) { return s.isNormalized(); });
  u.dilated = std::any_of(u.slices.begin(), u.slices.end(), [](const Slice& s) { return s.centerCount() == 0; });
  for (const Slice& s : u.slices)
    for (auto n : s.inNumbers()) u.q = std::max<std::size_t>(u.q, n);
}

}  // namespace

UnitDecomposition renumberCut(const UnitDecomposition& u, std::size_t k,
                              const std::vector<std::uint32_t>& newNumbers) {
  if (k == 0 || k >= u.slices.size()) throw InvalidArgument("renumberCut needs an inner cut");
  auto map = renaming(cutNumbers(u, k), newNumbers);
  UnitDecomposition r = u;
  r.slices[k - 1] = renameSide(u.slices[k - 1], Role::Out, map);
  r.slices[k] = renameSide(u.slices[k], Role::In, map);
  refreshFlags(r);
  return r;
}

UnitDecomposition insertPermutationSlice(const UnitDecomposition& u, std::size_t k,
                                         const std::vector<std::uint32_t>& newNumbers) {
  auto old = cutNumbers(u, k);
  auto map = renaming(old, newNumbers);
  Slice p;
  if (k > 0) {
    const Slice& left = u.slices[k - 1];
    for (auto v : left.outFrontier()) {
      const SliceEdge& e = left.edge(left.frontierEdge(v));
      std::uint32_t number = left.vertex(v).number;
      std::uint32_t in = p.addIn(number);
      std::uint32_t out = p.addOut(map.at(number));
      if (left.vertex(e.target).role == Role::Out)
        p.addEdge(in, out, e.label, e.weight, e.origin, e.tag);
      else
        p.addEdge(out, in, e.label, e.weight, e.origin, e.tag);
    }
  }
  UnitDecomposition r = u;
  if (k < u.slices.size()) r.slices[k] = renameSide(u.slices[k], Role::In, map);
  r.slices.insert(r.slices.begin() + static_cast<std::ptrdiff_t>(k), std::move(p));
  refreshFlags(r);
  r.dilated = true;
  return r;
}

std::string serializeDecomposition(const UnitDecomposition& u) {
  if (u.omega.kind() != WeightSemigroup::Kind::BoundedSum)
    throw InvalidArgument("only boundedSum semigroups serialize");
  std::ostringstream out;
  out << "decomposition 1\n";
  out << "q " << u.q << '\n';
  out << "flags dilated=" << u.dilated << " normalized=" << u.normalized << '\n';
  out << "semigroup " << u.omega.describe() << '\n';
  out << "ordering " << (u.sourceOrdering ? formatOrdering(*u.sourceOrdering) : "-") << '\n';
  out << "slices " << u.slices.size() << '\n';
  for (const Slice& s : u.slices) out << serializeSlice(s) << '\n';
  return out.str();
}

UnitDecomposition parseDecomposition(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineNo = 0;
  auto next = [&](const std::string& key) {
    while (std::getline(in, line)) {
      ++lineNo;
      if (!line.empty()) break;
    }
    if (line.rfind(key, 0) != 0) throw ParseError("expected '" + key + "'", lineNo);
    return line.substr(key.size());
  };
  if (next("decomposition ") != "1") throw ParseError("unsupported decomposition version", lineNo);
  UnitDecomposition u;
  u.q = std::stoul(next("q "));
  auto flags = next("flags ");
  if (flags != "dilated=0 normalized=0" && flags != "dilated=0 normalized=1" &&
      flags != "dilated=1 normalized=0" && flags != "dilated=1 normalized=1")
    throw ParseError("bad flags line", lineNo);
  u.dilated = flags[8] == '1';
  u.normalized = flags[21] == '1';
  auto semigroup = next("semigroup ");
  if (semigroup.rfind("boundedSum(", 0) != 0 || semigroup.back() != ')')
    throw ParseError("bad semigroup line", lineNo);
  u.omega = WeightSemigroup::boundedSum(
      static_cast<std::uint32_t>(std::stoul(semigroup.substr(11, semigroup.size() - 12))));
  auto ordering = next("ordering ");
  if (ordering != "-") u.sourceOrdering = parseOrdering(ordering);
  std::size_t m = std::stoul(next("slices "));
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw ParseError("missing slice line", lineNo + 1);
    ++lineNo;
    try {
      u.slices.push_back(parseSlice(line));
    } catch (const ParseError& e) {
      throw ParseError(e.message(), lineNo);
    }
  }
  u.validate();
  return u;
}

}  // namespace slicecount
