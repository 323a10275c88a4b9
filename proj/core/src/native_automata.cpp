#include "slicecount/native_automata.hpp"

#include <numeric>

#include "slicecount/errors.hpp"

namespace slicecount {

namespace {

// Union-find with parity to the root.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(std::size_t n) : parent_(n), parity_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  std::pair<std::uint32_t, std::uint8_t> find(std::uint32_t x) {
    std::uint8_t p = 0;
    std::uint32_t r = x;
    while (parent_[r] != r) p ^= parity_[r], r = parent_[r];
    // Path compression keeps the parity relative to the root.
    std::uint8_t acc = p;
    while (parent_[x] != x) {
      std::uint32_t next = parent_[x];
      std::uint8_t step = parity_[x];
      parent_[x] = r;
      parity_[x] = acc;
      acc ^= step;
      x = next;
    }
    return {r, p};
  }
  // Records color(x) = color(y) ^ d. Returns false if x and y were already
  // joined (consistent or not); `conflict` reports an inconsistent relation.
  bool unite(std::uint32_t x, std::uint32_t y, std::uint8_t d, bool* conflict = nullptr) {
    auto [rx, px] = find(x);
    auto [ry, py] = find(y);
    if (rx == ry) {
      if (conflict) *conflict = (px ^ py) != d;
      return false;
    }
    parent_[rx] = ry;
    parity_[rx] = px ^ py ^ d;
    if (conflict) *conflict = false;
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> parity_;
};

// Relabels roots in order of first appearance.
std::string canonicalClasses(const std::vector<std::uint32_t>& roots) {
  std::string out;
  std::vector<std::pair<std::uint32_t, char>> seen;
  for (auto r : roots) {
    char label = 0;
    bool found = false;
    for (auto& [root, l] : seen)
      if (root == r) label = l, found = true;
    if (!found) {
      label = static_cast<char>(seen.size());
      seen.emplace_back(r, label);
    }
    out += label;
  }
  return out;
}

// Node layout shared by the partition automata: old classes, then the center,
// then out-frontier numbers 1..b.
struct Nodes {
  std::uint32_t classes;
  std::uint32_t center() const { return classes; }
  std::uint32_t out(std::uint32_t j) const { return classes + j; }
  std::uint32_t total(const UnitView& v) const { return classes + 1 + v.outCount; }
};

std::uint32_t classCount(const std::string& cls, std::size_t offset) {
  std::uint32_t k = 0;
  for (std::size_t i = offset; i < cls.size(); ++i) k = std::max<std::uint32_t>(k, static_cast<std::uint8_t>(cls[i]) + 1u);
  return k;
}

// Key: one byte closed-count, then the class of each out-frontier number.
class ConnectedAutomaton final : public SliceAutomaton {
 public:
  using SliceAutomaton::SliceAutomaton;
  std::string name() const override { return "connected"; }
  StateId initial() override { return table_.intern(std::string(1, '\0')); }
  bool accepting(StateId s) override { return table_.key(s).size() == 1; }
  std::size_t stateCount() const override { return table_.size(); }

 protected:
  std::optional<StateId> computeStep(StateId s, SymbolId a) override {
    const UnitView& v = alphabet()->view(a);
    const std::string key = table_.key(s);
    if (key.size() - 1 != v.inCount) return std::nullopt;
    const int closed = key[0];
    if (closed && v.hasCenter) return std::nullopt;
    Nodes nodes{classCount(key, 1)};
    ParityUnionFind uf(nodes.total(v));
    auto cls = [&](std::uint32_t j) { return static_cast<std::uint32_t>(static_cast<std::uint8_t>(key[j])); };
    for (const UnitSegment& seg : v.segments) {
      std::uint32_t from = seg.in ? cls(seg.in) : nodes.center();
      std::uint32_t to = seg.out ? nodes.out(seg.out) : nodes.center();
      uf.unite(from, to, 0);
    }
    std::vector<bool> open(nodes.total(v), false);
    std::vector<std::uint32_t> roots;
    for (std::uint32_t j = 1; j <= v.outCount; ++j) {
      auto r = uf.find(nodes.out(j)).first;
      open[r] = true;
      roots.push_back(r);
    }
    std::vector<bool> counted(nodes.total(v), false);
    int newlyClosed = 0;
    auto settle = [&](std::uint32_t node) {
      auto r = uf.find(node).first;
      if (!open[r] && !counted[r]) counted[r] = true, ++newlyClosed;
    };
    for (std::uint32_t k = 0; k < nodes.classes; ++k) settle(k);
    if (v.hasCenter) settle(nodes.center());
    const int total = closed + newlyClosed;
    if (total >= 2 || (total == 1 && v.outCount > 0)) return std::nullopt;
    return table_.intern(std::string(1, static_cast<char>(total)) + canonicalClasses(roots));
  }

 private:
  StateTable table_;
};

// Key: the class of each out-frontier number.
class ForestAutomaton final : public SliceAutomaton {
 public:
  using SliceAutomaton::SliceAutomaton;
  std::string name() const override { return "forest"; }
  StateId initial() override { return table_.intern(""); }
  bool accepting(StateId) override { return true; }
  std::size_t stateCount() const override { return table_.size(); }

 protected:
  std::optional<StateId> computeStep(StateId s, SymbolId a) override {
    const UnitView& v = alphabet()->view(a);
    const std::string key = table_.key(s);
    if (key.size() != v.inCount) return std::nullopt;
    Nodes nodes{classCount(key, 0)};
    ParityUnionFind uf(nodes.total(v));
    for (const UnitSegment& seg : v.segments) {
      if (seg.kind == SegmentKind::Loop) return std::nullopt;
      std::uint32_t from = seg.in ? static_cast<std::uint8_t>(key[seg.in - 1]) : nodes.center();
      std::uint32_t to = seg.out ? nodes.out(seg.out) : nodes.center();
      if (!uf.unite(from, to, 0)) return std::nullopt;
    }
    std::vector<std::uint32_t> roots;
    for (std::uint32_t j = 1; j <= v.outCount; ++j) roots.push_back(uf.find(nodes.out(j)).first);
    return table_.intern(canonicalClasses(roots));
  }

 private:
  StateTable table_;
};

// Key: two bytes per out-frontier number, its class and the color of its
// inner endpoint relative to the first member of that class.
class BipartiteAutomaton final : public SliceAutomaton {
 public:
  using SliceAutomaton::SliceAutomaton;
  std::string name() const override { return "bipartite"; }
  StateId initial() override { return table_.intern(""); }
  bool accepting(StateId) override { return true; }
  std::size_t stateCount() const override { return table_.size(); }

 protected:
  std::optional<StateId> computeStep(StateId s, SymbolId a) override {
    const UnitView& v = alphabet()->view(a);
    const std::string key = table_.key(s);
    if (key.size() != 2 * v.inCount) return std::nullopt;
    std::uint32_t classes = 0;
    for (std::size_t i = 0; i < key.size(); i += 2) classes = std::max<std::uint32_t>(classes, key[i] + 1u);
    Nodes nodes{classes};
    ParityUnionFind uf(nodes.total(v));
    bool conflict = false;
    for (const UnitSegment& seg : v.segments) {
      if (seg.kind == SegmentKind::Loop) return std::nullopt;
      if (seg.in) {
        std::uint32_t cls = static_cast<std::uint8_t>(key[2 * (seg.in - 1)]);
        std::uint8_t parity = static_cast<std::uint8_t>(key[2 * (seg.in - 1) + 1]);
        if (seg.out) uf.unite(nodes.out(seg.out), cls, parity, &conflict);
        else uf.unite(nodes.center(), cls, parity ^ 1, &conflict);
      } else {
        uf.unite(nodes.out(seg.out), nodes.center(), 0, &conflict);
      }
      if (conflict) return std::nullopt;
    }
    std::vector<std::uint32_t> roots;
    std::vector<std::uint8_t> parities;
    for (std::uint32_t j = 1; j <= v.outCount; ++j) {
      auto [r, p] = uf.find(nodes.out(j));
      roots.push_back(r);
      parities.push_back(p);
    }
    std::string classes2 = canonicalClasses(roots);
    std::string next;
    std::vector<int> base(classes2.size() + 1, -1);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      auto c = static_cast<std::size_t>(classes2[i]);
      if (base[c] < 0) base[c] = parities[i];
      next += classes2[i];
      next += static_cast<char>(parities[i] ^ base[c]);
    }
    return table_.intern(next);
  }

 private:
  StateTable table_;
};

// State 0: no vertex yet; state 1: at least one.
class DegreeOneOneAutomaton final : public SliceAutomaton {
 public:
  using SliceAutomaton::SliceAutomaton;
  std::string name() const override { return "degree-1-1"; }
  StateId initial() override { return 0; }
  bool accepting(StateId s) override { return s == 1; }
  std::size_t stateCount() const override { return 2; }

 protected:
  std::optional<StateId> computeStep(StateId s, SymbolId a) override {
    const UnitView& v = alphabet()->view(a);
    if (!v.hasCenter) return s;
    int in = 0, out = 0;
    for (const UnitSegment& seg : v.segments) {
      in += seg.centerIsTarget() ? 1 : 0;
      out += seg.centerIsSource() ? 1 : 0;
    }
    if (in != 1 || out != 1) return std::nullopt;
    return 1;
  }
};

}  // namespace

AutomatonPtr makeConnected(AlphabetPtr alphabet) { return std::make_shared<ConnectedAutomaton>(std::move(alphabet)); }
AutomatonPtr makeForest(AlphabetPtr alphabet) { return std::make_shared<ForestAutomaton>(std::move(alphabet)); }
AutomatonPtr makeBipartite(AlphabetPtr alphabet) { return std::make_shared<BipartiteAutomaton>(std::move(alphabet)); }
AutomatonPtr makeDegreeOneOne(AlphabetPtr alphabet) {
  return std::make_shared<DegreeOneOneAutomaton>(std::move(alphabet));
}

AutomatonPtr makeHamiltonianCycle(AlphabetPtr alphabet) {
  auto degree = makeDegreeOneOne(alphabet);
  auto connected = makeConnected(alphabet);
  return makeAnd(std::move(alphabet), {degree, connected});
}

AutomatonPtr makeMacroAutomaton(AlphabetPtr alphabet, MacroKind kind, int parameter) {
  switch (kind) {
    case MacroKind::Connected: return makeConnected(std::move(alphabet));
    case MacroKind::Forest: return makeForest(std::move(alphabet));
    case MacroKind::Bipartite: return makeBipartite(std::move(alphabet));
    case MacroKind::HamiltonianCycle: return makeHamiltonianCycle(std::move(alphabet));
    case MacroKind::ZigZag:
      if (parameter < 1) throw InvalidArgument("zigzag needs z >= 1");
      return makeZigZag(std::move(alphabet), static_cast<std::size_t>(parameter));
    case MacroKind::Unitable:
      if (parameter < 1) throw InvalidArgument("unitable needs k >= 1");
      return makeUnitable(std::move(alphabet), static_cast<std::size_t>(parameter));
    case MacroKind::Path:
    case MacroKind::PathVertices:
    case MacroKind::PathEdges: break;
  }
  throw InvalidArgument(std::string("macro '") + macroName(kind) + "' has free variables");
}

}  // namespace slicecount
