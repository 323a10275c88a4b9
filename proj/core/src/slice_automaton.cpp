#include "slicecount/slice_automaton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "slicecount/errors.hpp"

namespace slicecount {

UnitView makeUnitView(const Slice& s) {
  if (!s.isNormalized()) throw InvalidArgument("unit view needs a normalized slice");
  if (s.centerCount() > 1) throw InvalidArgument("unit view needs a unit slice");
  UnitView view;
  view.inCount = static_cast<std::uint32_t>(s.inSize());
  view.outCount = static_cast<std::uint32_t>(s.outSize());
  view.inOrientation.assign(view.inCount + 1, 0);
  view.outOrientation.assign(view.outCount + 1, 0);
  for (const SliceVertex& v : s.vertices())
    if (v.role == Role::Center) view.hasCenter = true, view.centerLabel = v.label;
  for (std::uint32_t i = 0; i < s.edges().size(); ++i) {
    const SliceEdge& e = s.edge(i);
    const SliceVertex& from = s.vertex(e.source);
    const SliceVertex& to = s.vertex(e.target);
    UnitSegment seg;
    seg.label = e.label;
    seg.edge = i;
    if (from.role == Role::In) seg.in = from.number;
    if (from.role == Role::Out) seg.out = from.number;
    if (to.role == Role::In) seg.in = to.number;
    if (to.role == Role::Out) seg.out = to.number;
    switch (from.role) {
      case Role::In: seg.kind = to.role == Role::Center ? SegmentKind::InToCenter : SegmentKind::InToOut; break;
      case Role::Out: seg.kind = to.role == Role::Center ? SegmentKind::OutToCenter : SegmentKind::OutToIn; break;
      case Role::Center:
        seg.kind = to.role == Role::In    ? SegmentKind::CenterToIn
                   : to.role == Role::Out ? SegmentKind::CenterToOut
                                          : SegmentKind::Loop;
        break;
    }
    if (seg.in) view.inOrientation[seg.in] = s.orientation(i);
    if (seg.out) view.outOrientation[seg.out] = s.orientation(i);
    view.segments.push_back(std::move(seg));
  }
  std::sort(view.segments.begin(), view.segments.end(), [](const UnitSegment& a, const UnitSegment& b) {
    return std::tie(a.kind, a.in, a.out, a.label, a.edge) < std::tie(b.kind, b.in, b.out, b.label, b.edge);
  });
  return view;
}

SymbolId SliceAlphabet::intern(const Slice& s) {
  Slice symbol = stripToSymbol(normalize(s));
  std::string key = canonicalForm(symbol);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  auto id = static_cast<SymbolId>(symbols_.size());
  views_.push_back(makeUnitView(symbol));
  symbols_.push_back(std::move(symbol));
  keys_.push_back(key);
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<SymbolId> SliceAlphabet::find(const Slice& s) const {
  auto it = index_.find(canonicalForm(stripToSymbol(normalize(s))));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

StateId StateTable::intern(const std::string& key) {
  auto [it, fresh] = index_.emplace(key, static_cast<StateId>(keys_.size()));
  if (fresh) keys_.push_back(key);
  return it->second;
}

std::optional<StateId> SliceAutomaton::step(StateId s, SymbolId a) {
  constexpr StateId kDead = UINT32_MAX;
  const std::uint64_t key = (std::uint64_t{s} << 32) | a;
  auto it = cache_.find(key);
  if (it != cache_.end()) {
    if (it->second == kDead) return std::nullopt;
    return it->second;
  }
  auto next = computeStep(s, a);
  cache_.emplace(key, next ? *next : kDead);
  return next;
}

void SliceAutomaton::checkCap(std::size_t count) const {
  if (count > stateCap_)
    throw ResourceError(name() + ": state cap of " + std::to_string(stateCap_) + " exceeded");
}

namespace {

std::string packStates(const std::vector<StateId>& states) {
  return std::string(reinterpret_cast<const char*>(states.data()), states.size() * sizeof(StateId));
}

class ConstAutomaton final : public SliceAutomaton {
 public:
  ConstAutomaton(AlphabetPtr alphabet, bool value) : SliceAutomaton(std::move(alphabet)), value_(value) {}
  std::string name() const override { return value_ ? "true" : "false"; }
  StateId initial() override { return 0; }
  bool accepting(StateId) override { return value_; }
  std::size_t stateCount() const override { return 1; }

 protected:
  std::optional<StateId> computeStep(StateId, SymbolId) override {
    if (!value_) return std::nullopt;
    return 0;
  }

 private:
  bool value_;
};

class TupleAutomaton : public SliceAutomaton {
 public:
  TupleAutomaton(AlphabetPtr alphabet, std::vector<AutomatonPtr> children)
      : SliceAutomaton(std::move(alphabet)), children_(std::move(children)) {
    for (const auto& c : children_)
      if (c->alphabet() != this->alphabet()) throw InvalidArgument("combined automata must share an alphabet");
  }
  std::size_t stateCount() const override { return tuples_.size(); }

 protected:
  StateId intern(const std::vector<StateId>& tuple) {
    auto before = table_.size();
    auto id = table_.intern(packStates(tuple));
    if (table_.size() != before) {
      tuples_.push_back(tuple);
      checkCap(tuples_.size());
    }
    return id;
  }
  std::string joinedNames(const char* op) const {
    std::string out = "(";
    out += op;
    for (const auto& c : children_) out += " " + c->name();
    return out + ")";
  }

  std::vector<AutomatonPtr> children_;
  std::vector<std::vector<StateId>> tuples_;
  StateTable table_;
};

constexpr StateId kDeadChild = UINT32_MAX;

class AndAutomaton final : public TupleAutomaton {
 public:
  using TupleAutomaton::TupleAutomaton;
  std::string name() const override { return joinedNames("and"); }
  StateId initial() override {
    std::vector<StateId> t;
    for (auto& c : children_) t.push_back(c->initial());
    return intern(t);
  }
  bool accepting(StateId s) override {
    for (std::size_t i = 0; i < children_.size(); ++i)
      if (!children_[i]->accepting(tuples_[s][i])) return false;
    return true;
  }

 protected:
  std::optional<StateId> computeStep(StateId s, SymbolId a) override {
    std::vector<StateId> next(children_.size());
    for (std::size_t i = 0; i < children_.size(); ++i) {
      auto n = children_[i]->step(tuples_[s][i], a);
      if (!n) return std::nullopt;
      next[i] = *n;
    }
    return intern(next);
  }
};

class OrAutomaton final : public TupleAutomaton {
 public:
  using TupleAutomaton::TupleAutomaton;
  std::string name() const override { return joinedNames("or"); }
  StateId initial() override {
    std::vector<StateId> t;
    for (auto& c : children_) t.push_back(c->initial());
    return intern(t);
  }
  bool accepting(StateId s) override {
    for (std::size_t i = 0; i < children_.size(); ++i)
      if (tuples_[s][i] != kDeadChild && children_[i]->accepting(tuples_[s][i])) return true;
    return false;
  }

 protected:
  std::optional<StateId> computeStep(StateId s, SymbolId a) override {
    std::vector<StateId> next(children_.size(), kDeadChild);
    bool alive = false;
    for (std::size_t i = 0; i < children_.size(); ++i) {
      if (tuples_[s][i] == kDeadChild) continue;
      if (auto n = children_[i]->step(tuples_[s][i], a)) next[i] = *n, alive = true;
    }
    if (!alive) return std::nullopt;
    return intern(next);
  }
};

// State 0 is the accept-all sink reached when the child dies; s+1 mirrors child state s.
class NotAutomaton final : public SliceAutomaton {
 public:
  NotAutomaton(AlphabetPtr alphabet, AutomatonPtr child) : SliceAutomaton(std::move(alphabet)), child_(std::move(child)) {
    if (child_->alphabet() != this->alphabet()) throw InvalidArgument("combined automata must share an alphabet");
  }
  std::string name() const override { return "(not " + child_->name() + ")"; }
  StateId initial() override { return child_->initial() + 1; }
  bool accepting(StateId s) override { return s == 0 || !child_->accepting(s - 1); }
  std::size_t stateCount() const override { return child_->stateCount() + 1; }

 protected:
  std::optional<StateId> computeStep(StateId s, SymbolId a) override {
    if (s == 0) return 0;
    auto n = child_->step(s - 1, a);
    return n ? *n + 1 : 0;
  }

 private:
  AutomatonPtr child_;
};

class WidthAutomaton final : public SliceAutomaton {
 public:
  WidthAutomaton(AlphabetPtr alphabet, std::size_t c) : SliceAutomaton(std::move(alphabet)), c_(c) {}
  std::string name() const override { return "width<=" + std::to_string(c_); }
  StateId initial() override { return 0; }
  bool accepting(StateId) override { return true; }
  std::size_t stateCount() const override { return 1; }

 protected:
  std::optional<StateId> computeStep(StateId, SymbolId a) override {
    if (alphabet()->view(a).width() > c_) return std::nullopt;
    return 0;
  }

 private:
  std::size_t c_;
};

// State key: empty before the first symbol, else 'S' followed by one byte per
// out-frontier number giving its orientation.
class GluingAutomaton final : public SliceAutomaton {
 public:
  using SliceAutomaton::SliceAutomaton;
  std::string name() const override { return "gluing"; }
  StateId initial() override { return table_.intern(""); }
  bool accepting(StateId s) override { return table_.key(s) == "S"; }
  std::size_t stateCount() const override { return table_.size(); }

 protected:
  std::optional<StateId> computeStep(StateId s, SymbolId a) override {
    const UnitView& v = alphabet()->view(a);
    const std::string prev = table_.key(s);
    if (prev.empty()) {
      if (v.inCount != 0) return std::nullopt;
    } else {
      if (prev.size() - 1 != v.inCount) return std::nullopt;
      for (std::uint32_t j = 1; j <= v.inCount; ++j)
        if ((prev[j] == '+') != (v.inOrientation[j] > 0)) return std::nullopt;
    }
    std::string next = "S";
    for (std::uint32_t j = 1; j <= v.outCount; ++j) next += v.outOrientation[j] > 0 ? '+' : '-';
    return table_.intern(next);
  }

 private:
  StateTable table_;
};

}  // namespace

AutomatonPtr makeConst(AlphabetPtr alphabet, bool value) {
  return std::make_shared<ConstAutomaton>(std::move(alphabet), value);
}

AutomatonPtr makeAnd(AlphabetPtr alphabet, std::vector<AutomatonPtr> children) {
  if (children.empty()) return makeConst(std::move(alphabet), true);
  if (children.size() == 1) return children.front();
  return std::make_shared<AndAutomaton>(std::move(alphabet), std::move(children));
}

AutomatonPtr makeOr(AlphabetPtr alphabet, std::vector<AutomatonPtr> children) {
  if (children.empty()) return makeConst(std::move(alphabet), false);
  if (children.size() == 1) return children.front();
  return std::make_shared<OrAutomaton>(std::move(alphabet), std::move(children));
}

AutomatonPtr makeNot(AlphabetPtr alphabet, AutomatonPtr child) {
  return std::make_shared<NotAutomaton>(std::move(alphabet), std::move(child));
}

AutomatonPtr makeWidth(AlphabetPtr alphabet, std::size_t c) {
  return std::make_shared<WidthAutomaton>(std::move(alphabet), c);
}

AutomatonPtr makeGluing(AlphabetPtr alphabet) { return std::make_shared<GluingAutomaton>(std::move(alphabet)); }

bool accepts(SliceAutomaton& a, const std::vector<Slice>& word) {
  StateId s = a.initial();
  for (const Slice& symbol : word) {
    auto next = a.step(s, a.alphabet()->intern(symbol));
    if (!next) return false;
    s = *next;
  }
  return a.accepting(s);
}

std::vector<Slice> enumerateUnitSymbols(std::size_t c, const std::vector<std::string>& vertexLabels,
                                        const std::vector<std::string>& edgeLabels, std::size_t maxLoops) {
  if (vertexLabels.empty() || edgeLabels.empty()) throw InvalidArgument("label sets must be nonempty");
  std::map<std::string, Slice> out;
  // Partner of each frontier vertex: another frontier vertex or the center.
  struct Plan {
    std::size_t a = 0, b = 0;
    bool center = false;
    std::vector<int> inPartner;  // out number, or 0 for the center
  };
  std::vector<Plan> plans;
  for (std::size_t a = 0; a <= c; ++a)
    for (std::size_t b = 0; b <= c; ++b)
      for (int center = 0; center <= 1; ++center) {
        std::vector<int> partner(a + 1, 0);
        std::vector<bool> used(b + 1, false);
        std::function<void(std::size_t)> assign = [&](std::size_t j) {
          if (j > a) {
            std::size_t free = 0;
            for (std::size_t o = 1; o <= b; ++o) free += used[o] ? 0 : 1;
            if (free && !center) return;
            plans.push_back(Plan{a, b, center == 1, partner});
            return;
          }
          if (center) partner[j] = 0, assign(j + 1);
          for (std::size_t o = 1; o <= b; ++o)
            if (!used[o]) {
              used[o] = true;
              partner[j] = static_cast<int>(o);
              assign(j + 1);
              used[o] = false;
            }
        };
        assign(1);
      }
  for (const Plan& plan : plans) {
    // Segments: every in vertex, then every out vertex not paired with an in vertex.
    std::vector<std::pair<int, int>> segments;  // (in number or 0, out number or 0)
    std::vector<bool> paired(plan.b + 1, false);
    for (std::size_t j = 1; j <= plan.a; ++j) {
      segments.emplace_back(static_cast<int>(j), plan.inPartner[j]);
      if (plan.inPartner[j]) paired[plan.inPartner[j]] = true;
    }
    for (std::size_t o = 1; o <= plan.b; ++o)
      if (!paired[o]) segments.emplace_back(0, static_cast<int>(o));
    const std::size_t m = segments.size();
    const std::size_t choices = 2 * edgeLabels.size();
    std::vector<std::size_t> pick(m, 0);
    for (const auto& centerLabel : plan.center ? vertexLabels : std::vector<std::string>{""})
      for (std::size_t loops = 0; loops <= (plan.center ? maxLoops : 0); ++loops) {
        std::vector<std::size_t> loopLabels(loops, 0);
        while (true) {
          std::fill(pick.begin(), pick.end(), 0);
          while (true) {
            Slice s;
            std::vector<std::uint32_t> in(plan.a + 1), outv(plan.b + 1);
            for (std::size_t j = 1; j <= plan.a; ++j) in[j] = s.addIn(static_cast<std::uint32_t>(j));
            std::uint32_t ctr = plan.center ? s.addCenter(centerLabel) : 0;
            for (std::size_t o = 1; o <= plan.b; ++o) outv[o] = s.addOut(static_cast<std::uint32_t>(o));
            for (std::size_t i = 0; i < m; ++i) {
              auto [a, b] = segments[i];
              std::uint32_t lo = a ? in[a] : ctr;
              std::uint32_t hi = b ? outv[b] : ctr;
              bool forward = pick[i] % 2 == 0;
              const std::string& label = edgeLabels[pick[i] / 2];
              if (forward) s.addEdge(lo, hi, label);
              else s.addEdge(hi, lo, label);
            }
            for (std::size_t l = 0; l < loops; ++l) s.addEdge(ctr, ctr, edgeLabels[loopLabels[l]]);
            std::string key = canonicalForm(s);
            out.emplace(std::move(key), std::move(s));
            std::size_t i = 0;
            while (i < m && ++pick[i] == choices) pick[i++] = 0;
            if (i == m) break;
          }
          // Next non-decreasing loop label sequence.
          std::size_t l = loops;
          while (l > 0 && loopLabels[l - 1] + 1 == edgeLabels.size()) --l;
          if (l == 0) break;
          ++loopLabels[l - 1];
          for (std::size_t r = l; r < loops; ++r) loopLabels[r] = loopLabels[l - 1];
        }
      }
  }
  std::vector<Slice> result;
  for (auto& [key, s] : out) result.push_back(std::move(s));
  return result;
}

}  // namespace slicecount
