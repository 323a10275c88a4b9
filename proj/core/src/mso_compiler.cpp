#include "slicecount/mso_compiler.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "slicecount/errors.hpp"
#include "slicecount/native_automata.hpp"

namespace slicecount {

namespace {

using Type = MicroLetters::Type;

std::uint64_t inc2(std::uint64_t c) { return std::min<std::uint64_t>(c + 1, 2); }

// Packed counters and flags of the single-element atoms.
struct AtomState {
  std::uint64_t cx = 0, cy = 0;  // origin counts of X and Y, saturating at 2
  bool badX = false, badY = false;
  bool curX = false, curY = false;  // per-symbol markers, reset at Sep
  bool ok = false;

  std::uint64_t pack() const {
    return cx | cy << 2 | std::uint64_t{badX} << 4 | std::uint64_t{badY} << 5 | std::uint64_t{curX} << 6 |
           std::uint64_t{curY} << 7 | std::uint64_t{ok} << 8;
  }
  static AtomState unpack(std::uint64_t s) {
    AtomState a;
    a.cx = s & 3, a.cy = (s >> 2) & 3;
    a.badX = (s >> 4) & 1, a.badY = (s >> 5) & 1, a.curX = (s >> 6) & 1, a.curY = (s >> 7) & 1, a.ok = (s >> 8) & 1;
    return a;
  }
};

std::vector<std::string> sortedUnique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

class MicroAutomaton final : public SliceAutomaton {
 public:
  MicroAutomaton(AlphabetPtr alphabet, MicroDfa dfa, MicroLetters letters)
      : SliceAutomaton(std::move(alphabet)), dfa_(std::move(dfa)), letters_(std::move(letters)) {
    if (!dfa_.vars.empty()) throw InvalidArgument("micro automaton has free variables");
    for (std::uint32_t s = 0; s < dfa_.states; ++s) sink_.push_back(dfa_.isSink(s));
  }
  std::string name() const override { return "mso[" + std::to_string(dfa_.states) + "]"; }
  StateId initial() override { return dfa_.initial; }
  bool accepting(StateId s) override { return dfa_.accept[s]; }
  std::size_t stateCount() const override { return dfa_.states; }

 protected:
  std::optional<StateId> computeStep(StateId s, SymbolId a) override {
    const UnitView& v = alphabet()->view(a);
    if (v.width() > letters_.c()) return std::nullopt;
    for (auto letter : letters_.word(v)) s = dfa_.next(s, letter);
    if (sink_[s]) return std::nullopt;
    return s;
  }

 private:
  MicroDfa dfa_;
  MicroLetters letters_;
  std::vector<bool> sink_;
};

AutomatonPtr capped(AutomatonPtr a, const CompileOptions& options) {
  a->setStateCap(options.sliceStateCap);
  return a;
}

}  // namespace

MicroLetters lettersFor(const FormulaPtr& phi, std::size_t c) {
  auto v = mentionedVertexLabels(phi);
  auto e = mentionedEdgeLabels(phi);
  return MicroLetters(c, {v.begin(), v.end()}, {e.begin(), e.end()});
}

MicroDfa atomicAutomaton(const Formula& atom, const MicroLetters& letters, const MicroLimits& limits) {
  if (atom.kind != FormulaKind::Atom) throw InvalidArgument("atomicAutomaton needs an atom");
  auto vars = sortedUnique(atom.vars);
  std::vector<std::uint32_t> argBit;
  for (const auto& v : atom.vars)
    argBit.push_back(static_cast<std::uint32_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin()));
  auto X = [&](std::uint32_t bits) { return ((bits >> argBit[0]) & 1u) != 0; };
  auto Y = [&](std::uint32_t bits) { return ((bits >> argBit[1]) & 1u) != 0; };
  const std::uint32_t bases = letters.baseCount();
  auto always = [](std::uint64_t) { return true; };
  switch (atom.atom) {
    case AtomKind::Vertices:
      return microFromFunction(
          vars, bases, 0,
          [&](std::uint64_t s, std::uint32_t base, std::uint32_t bits) -> std::optional<std::uint64_t> {
            if (letters.decode(base).type == Type::Edge && X(bits)) return std::nullopt;
            return s;
          },
          always, limits);
    case AtomKind::Edges:
      return microFromFunction(
          vars, bases, 0,
          [&](std::uint64_t s, std::uint32_t base, std::uint32_t bits) -> std::optional<std::uint64_t> {
            if (letters.decode(base).type == Type::Center && X(bits)) return std::nullopt;
            return s;
          },
          always, limits);
    case AtomKind::Singleton:
      return microFromFunction(
          vars, bases, 0,
          [&](std::uint64_t s, std::uint32_t base, std::uint32_t bits) -> std::optional<std::uint64_t> {
            const auto& d = letters.decode(base);
            bool counted = d.type == Type::Center || (d.type == Type::Edge && isOriginSegment(d.kind));
            return counted && X(bits) ? inc2(s) : s;
          },
          [](std::uint64_t s) { return s == 1; }, limits);
    case AtomKind::Subset:
      return microFromFunction(
          vars, bases, 0,
          [&](std::uint64_t s, std::uint32_t, std::uint32_t bits) -> std::optional<std::uint64_t> {
            if (X(bits) && !Y(bits)) return std::nullopt;
            return s;
          },
          always, limits);
    case AtomKind::Source:
    case AtomKind::Target: {
      const bool source = atom.atom == AtomKind::Source;
      return microFromFunction(
          vars, bases, 0,
          [&, source](std::uint64_t s, std::uint32_t base, std::uint32_t bits) -> std::optional<std::uint64_t> {
            const auto& d = letters.decode(base);
            AtomState a = AtomState::unpack(s);
            if (d.type == Type::Sep) {
              a.curY = false;
            } else if (d.type == Type::Center) {
              if (X(bits)) a.badX = true;
              if (Y(bits)) a.cy = inc2(a.cy), a.curY = true;
            } else {
              if (Y(bits)) a.badY = true;
              if (X(bits)) {
                if (isOriginSegment(d.kind)) a.cx = inc2(a.cx);
                bool touches = source ? centerIsSource(d.kind) : centerIsTarget(d.kind);
                if (touches && a.curY) a.ok = true;
              }
            }
            return a.pack();
          },
          [](std::uint64_t s) {
            AtomState a = AtomState::unpack(s);
            return a.cx == 1 && a.cy == 1 && !a.badX && !a.badY && a.ok;
          },
          limits);
    }
    case AtomKind::VertexLabel: {
      const std::uint32_t bucket = letters.vertexBucket(atom.symbol);
      return microFromFunction(
          vars, bases, 0,
          [&, bucket](std::uint64_t s, std::uint32_t base, std::uint32_t bits) -> std::optional<std::uint64_t> {
            const auto& d = letters.decode(base);
            if (!X(bits) || d.type == Type::Sep) return s;
            if (d.type == Type::Edge || d.bucket != bucket) return std::nullopt;
            return s;
          },
          always, limits);
    }
    case AtomKind::EdgeLabel: {
      const std::uint32_t bucket = letters.edgeBucket(atom.symbol);
      return microFromFunction(
          vars, bases, 0,
          [&, bucket](std::uint64_t s, std::uint32_t base, std::uint32_t bits) -> std::optional<std::uint64_t> {
            const auto& d = letters.decode(base);
            if (!X(bits) || d.type == Type::Sep) return s;
            if (d.type == Type::Center) return std::nullopt;
            if (isCompletingSegment(d.kind) && d.bucket != bucket) return std::nullopt;
            return s;
          },
          always, limits);
    }
    case AtomKind::Frontier:
    case AtomKind::ConsecutiveFrontiers: {
      const bool equal = atom.atom == AtomKind::ConsecutiveFrontiers;
      return microFromFunction(
          vars, bases, 0,
          [&, equal](std::uint64_t s, std::uint32_t base, std::uint32_t bits) -> std::optional<std::uint64_t> {
            if (equal && X(bits) != Y(bits)) return std::nullopt;
            const auto& d = letters.decode(base);
            AtomState a = AtomState::unpack(s);
            if (X(bits) && d.type == Type::Center) a.badX = true;
            if (X(bits) && d.type == Type::Edge) {
              if (d.kind == SegmentKind::Loop) a.badX = true;
              if (isOriginSegment(d.kind)) a.cx = inc2(a.cx);
            }
            return a.pack();
          },
          [](std::uint64_t s) {
            AtomState a = AtomState::unpack(s);
            return a.cx == 1 && !a.badX;
          },
          limits);
    }
    case AtomKind::SameFrontier:
      return microFromFunction(
          vars, bases, 0,
          [&](std::uint64_t s, std::uint32_t base, std::uint32_t bits) -> std::optional<std::uint64_t> {
            const auto& d = letters.decode(base);
            AtomState a = AtomState::unpack(s);
            if (d.type == Type::Sep) {
              a.curX = a.curY = false;
            } else if (d.type == Type::Center) {
              if (X(bits)) a.badX = true;
              if (Y(bits)) a.badY = true;
            } else {
              if (isOriginSegment(d.kind)) {
                if (X(bits)) a.cx = inc2(a.cx);
                if (Y(bits)) a.cy = inc2(a.cy);
              }
              if (touchesOut(d.kind)) {
                if (X(bits)) a.curX = true;
                if (Y(bits)) a.curY = true;
              }
              if (a.curX && a.curY) a.ok = true;
            }
            return a.pack();
          },
          [](std::uint64_t s) {
            AtomState a = AtomState::unpack(s);
            return a.cx == 1 && a.cy == 1 && !a.badX && !a.badY && a.ok;
          },
          limits);
  }
  throw InvalidArgument("unknown atom");
}

MicroDfa representationAutomaton(const std::string& var, const MicroLetters& letters, const MicroLimits& limits) {
  if (letters.c() > 31) throw ResourceError("representation automaton supports width <= 31");
  // Low word: marks expected on the in-frontier; high word: marks set on the out-frontier.
  return microFromFunction(
      {var}, letters.baseCount(), 0,
      [&](std::uint64_t s, std::uint32_t base, std::uint32_t bits) -> std::optional<std::uint64_t> {
        const auto& d = letters.decode(base);
        const std::uint64_t m = bits & 1u;
        std::uint64_t expected = s & 0xffffffffu, fresh = s >> 32;
        if (d.type == Type::Sep) {
          if (m) return std::nullopt;
          return fresh;
        }
        if (d.type == Type::Edge) {
          if (d.in && ((expected >> d.in) & 1u) != m) return std::nullopt;
          if (d.out) fresh |= m << d.out;
        }
        return expected | fresh << 32;
      },
      [](std::uint64_t) { return true; }, limits);
}

MicroDfa validityAutomaton(const MicroLetters& letters, const MicroLimits& limits) {
  const auto c = static_cast<std::uint32_t>(letters.c());
  if (c > 15) return microConst(true, letters.baseCount());
  // Fields: started, prevKnown, center, last letter (16 bits), prevOut, curIn, curOut (c bits each).
  const std::uint64_t wires = (std::uint64_t{1} << c) - 1;
  struct Fields {
    bool started = false, known = false, center = false;
    std::uint64_t last = 0, prev = 0, in = 0, out = 0;
  };
  auto unpack = [=](std::uint64_t s) {
    Fields f;
    f.started = s & 1, f.known = (s >> 1) & 1, f.center = (s >> 2) & 1;
    f.last = (s >> 3) & 0xffff;
    f.prev = (s >> 19) & wires, f.in = (s >> (19 + c)) & wires, f.out = (s >> (19 + 2 * c)) & wires;
    return f;
  };
  auto pack = [=](const Fields& f) {
    return std::uint64_t{f.started} | std::uint64_t{f.known} << 1 | std::uint64_t{f.center} << 2 | f.last << 3 |
           f.prev << 19 | f.in << (19 + c) | f.out << (19 + 2 * c);
  };
  auto closes = [](const Fields& f) { return !f.known || f.in == f.prev; };
  return microFromFunction(
      {}, letters.baseCount(), 0,
      [&, unpack, pack, closes](std::uint64_t s, std::uint32_t base,
                                       std::uint32_t) -> std::optional<std::uint64_t> {
        Fields f = unpack(s);
        const auto& d = letters.decode(base);
        if (d.type == Type::Sep) {
          if (f.started) {
            if (!closes(f)) return std::nullopt;
            f.known = true, f.prev = f.out;
          }
          f.started = true, f.center = false, f.last = base, f.in = f.out = 0;
          return pack(f);
        }
        if (!f.started) return std::nullopt;
        if (d.type == Type::Center) {
          if (f.center || f.last != 0) return std::nullopt;
          f.center = true, f.last = base;
          return pack(f);
        }
        // Segments come in increasing letter order; only loops may repeat.
        if (base < f.last || (base == f.last && d.kind != SegmentKind::Loop)) return std::nullopt;
        const bool needsCenter = d.kind != SegmentKind::InToOut && d.kind != SegmentKind::OutToIn;
        if (needsCenter && !f.center) return std::nullopt;
        if (d.in) {
          const std::uint64_t bit = std::uint64_t{1} << (d.in - 1);
          if ((f.in & bit) || (f.known && !(f.prev & bit))) return std::nullopt;
          f.in |= bit;
        }
        if (d.out) {
          const std::uint64_t bit = std::uint64_t{1} << (d.out - 1);
          if (f.out & bit) return std::nullopt;
          f.out |= bit;
        }
        f.last = base;
        return pack(f);
      },
      [unpack, closes](std::uint64_t s) { return closes(unpack(s)); }, limits);
}

MicroDfa compileMicro(const FormulaPtr& phi, const MicroLetters& letters, const CompileOptions& options) {
  switch (phi->kind) {
    case FormulaKind::True: return microConst(true, letters.baseCount());
    case FormulaKind::False: return microConst(false, letters.baseCount());
    case FormulaKind::Atom: return atomicAutomaton(*phi, letters, options.limits);
    case FormulaKind::Not: return microComplement(compileMicro(phi->children.at(0), letters, options));
    case FormulaKind::And:
    case FormulaKind::Or: {
      const bool conj = phi->kind == FormulaKind::And;
      MicroDfa acc = microConst(conj, letters.baseCount());
      for (const auto& child : phi->children)
        acc = microProduct(acc, compileMicro(child, letters, options), conj, options.limits);
      return acc;
    }
    case FormulaKind::Exists: {
      const std::string& var = phi->vars.at(0);
      MicroDfa body = compileMicro(phi->children.at(0), letters, options);
      if (!std::binary_search(body.vars.begin(), body.vars.end(), var)) return body;
      body = microProduct(body, representationAutomaton(var, letters, options.limits), true, options.limits);
      // Invalid words would only feed the subset construction.
      body = microProduct(body, validityAutomaton(letters, options.limits), true, options.limits);
      return microProject(body, var, options.limits);
    }
    case FormulaKind::Macro: return compileMicro(expandMacros(phi), letters, options);
  }
  throw InvalidArgument("unknown formula node");
}

AutomatonPtr makeMicroAutomaton(AlphabetPtr alphabet, MicroDfa dfa, MicroLetters letters) {
  return std::make_shared<MicroAutomaton>(std::move(alphabet), std::move(dfa), std::move(letters));
}

AutomatonPtr compileFormula(const FormulaPtr& phi, AlphabetPtr alphabet, std::size_t c,
                            const CompileOptions& options) {
  if (auto free = freeVariables(phi); !free.empty())
    throw InvalidArgument("formula has free variable '" + *free.begin() + "'");
  switch (phi->kind) {
    case FormulaKind::True: return makeConst(alphabet, true);
    case FormulaKind::False: return makeConst(alphabet, false);
    case FormulaKind::Not:
      return capped(makeNot(alphabet, compileFormula(phi->children.at(0), alphabet, c, options)), options);
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<AutomatonPtr> parts;
      for (const auto& child : phi->children) parts.push_back(compileFormula(child, alphabet, c, options));
      auto a = phi->kind == FormulaKind::And ? makeAnd(alphabet, std::move(parts)) : makeOr(alphabet, std::move(parts));
      return capped(a, options);
    }
    case FormulaKind::Macro:
      if (options.nativeMacros) return capped(makeMacroAutomaton(alphabet, phi->macro, phi->parameter), options);
      return compileFormula(expandMacros(phi), alphabet, c, options);
    case FormulaKind::Exists:
    case FormulaKind::Atom: {
      MicroLetters letters = lettersFor(phi, c);
      MicroDfa dfa = compileMicro(phi, letters, options);
      return capped(makeMicroAutomaton(alphabet, std::move(dfa), std::move(letters)), options);
    }
  }
  throw InvalidArgument("unknown formula node");
}

AutomatonPtr compileSentence(const FormulaPtr& phi, AlphabetPtr alphabet, std::size_t c,
                             const CompileOptions& options) {
  auto body = compileFormula(phi, alphabet, c, options);
  return capped(makeAnd(alphabet, {makeGluing(alphabet), makeWidth(alphabet, c), body}), options);
}

AutomatonPtr zigzagFormulaAutomaton(std::size_t z, AlphabetPtr alphabet, std::size_t c,
                                    const CompileOptions& options) {
  return compileFormula(fml::macro(MacroKind::ZigZag, {}, static_cast<int>(z)), std::move(alphabet), c, options);
}

AutomatonPtr unitableFormulaAutomaton(std::size_t k, AlphabetPtr alphabet, std::size_t c,
                                      const CompileOptions& options) {
  return compileFormula(fml::macro(MacroKind::Unitable, {}, static_cast<int>(k)), std::move(alphabet), c, options);
}

AutomatonPtr saturatedAutomaton(const FormulaPtr& phi, std::size_t k, std::size_t z, AlphabetPtr alphabet,
                                const CompileOptions& options, bool includeZigZag) {
  if (k < 1 || z < 1) throw InvalidArgument("k and z must be positive");
  const std::size_t c = k * z;
  std::vector<AutomatonPtr> parts{makeGluing(alphabet), makeWidth(alphabet, c), compileFormula(phi, alphabet, c, options)};
  if (includeZigZag) parts.push_back(zigzagFormulaAutomaton(z, alphabet, c, options));
  parts.push_back(unitableFormulaAutomaton(k, alphabet, c, options));
  return capped(makeAnd(alphabet, std::move(parts)), options);
}

SliceGraph automatonSliceGraph(SliceAutomaton& automaton, std::size_t c) {
  const SliceAlphabet& alphabet = *automaton.alphabet();
  const auto symbols = static_cast<SymbolId>(alphabet.size());
  auto signature = [](std::uint32_t count, const std::vector<int>& orientation) {
    std::string s = std::to_string(count) + ":";
    for (std::uint32_t j = 1; j <= count; ++j) s += orientation[j] > 0 ? '+' : '-';
    return s;
  };
  std::unordered_map<std::string, std::vector<SymbolId>> byIn;
  for (SymbolId a = 0; a < symbols; ++a) {
    const UnitView& v = alphabet.view(a);
    if (v.width() <= c) byIn[signature(v.inCount, v.inOrientation)].push_back(a);
  }
  SliceGraph sg(c, c);
  std::vector<std::uint32_t> labelOf(symbols, UINT32_MAX);
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::deque<std::pair<StateId, SymbolId>> queue;
  auto visit = [&](StateId s, SymbolId a) {
    const std::uint64_t key = (std::uint64_t{s} << 32) | a;
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    if (labelOf[a] == UINT32_MAX) labelOf[a] = sg.internLabel(alphabet.symbol(a));
    auto v = sg.addVertex(labelOf[a]);
    sg.setFinal(v, automaton.accepting(s) && alphabet.view(a).outCount == 0);
    index.emplace(key, v);
    queue.emplace_back(s, a);
    return v;
  };
  const StateId start = automaton.initial();
  for (SymbolId a : byIn["0:"])
    if (auto next = automaton.step(start, a)) sg.setInitial(visit(*next, a));
  while (!queue.empty()) {
    auto [s, a] = queue.front();
    queue.pop_front();
    const auto from = index.at((std::uint64_t{s} << 32) | a);
    const UnitView& v = alphabet.view(a);
    auto it = byIn.find(signature(v.outCount, v.outOrientation));
    if (it == byIn.end()) continue;
    for (SymbolId b : it->second)
      if (auto next = automaton.step(s, b)) sg.addEdge(from, visit(*next, b));
  }
  return minimizeSliceGraph(sg);
}

SliceGraph buildSaturatedSliceGraph(const FormulaPtr& phi, std::size_t k, std::size_t z, AlphabetPtr alphabet,
                                    const CompileOptions& options) {
  auto automaton = saturatedAutomaton(phi, k, z, alphabet, options);
  return automatonSliceGraph(*automaton, k * z);
}

}  // namespace slicecount
