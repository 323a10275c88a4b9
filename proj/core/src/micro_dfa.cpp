#include "slicecount/micro_dfa.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "slicecount/errors.hpp"

namespace slicecount {

namespace {

constexpr SegmentKind kSlotKinds[] = {SegmentKind::InToCenter, SegmentKind::CenterToIn, SegmentKind::CenterToOut,
                                      SegmentKind::OutToCenter};

std::uint32_t bucketOf(const std::vector<std::string>& labels, const std::string& label) {
  auto it = std::find(labels.begin(), labels.end(), label);
  return static_cast<std::uint32_t>(it - labels.begin());
}

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

void checkSize(std::size_t states, std::size_t letters, const MicroLimits& limits) {
  if (states > limits.maxStates)
    throw ResourceError("micro automaton exceeds " + std::to_string(limits.maxStates) + " states");
  if (states * letters > limits.maxTransitions)
    throw ResourceError("micro automaton exceeds " + std::to_string(limits.maxTransitions) + " transitions");
}

// Positions of `sub` variables inside the sorted `all`.
std::vector<std::uint32_t> positionsOf(const std::vector<std::string>& sub, const std::vector<std::string>& all) {
  std::vector<std::uint32_t> pos;
  for (const auto& v : sub)
    pos.push_back(static_cast<std::uint32_t>(std::lower_bound(all.begin(), all.end(), v) - all.begin()));
  return pos;
}

// Letter of `to` obtained by restricting a letter over `from` variables.
std::vector<std::uint32_t> restriction(const MicroDfa& to, const std::vector<std::string>& fromVars) {
  const auto pos = positionsOf(to.vars, fromVars);
  const std::uint32_t v = static_cast<std::uint32_t>(fromVars.size());
  std::vector<std::uint32_t> map(std::size_t{to.bases} << v);
  for (std::uint32_t letter = 0; letter < map.size(); ++letter) {
    std::uint32_t base = letter >> v, bits = 0;
    for (std::uint32_t i = 0; i < pos.size(); ++i) bits |= ((letter >> pos[i]) & 1u) << i;
    map[letter] = (base << to.vars.size()) | bits;
  }
  return map;
}

}  // namespace

MicroLetters::MicroLetters(std::size_t c, std::vector<std::string> vertexLabels, std::vector<std::string> edgeLabels)
    : c_(c), vertexLabels_(std::move(vertexLabels)), edgeLabels_(std::move(edgeLabels)) {
  std::sort(vertexLabels_.begin(), vertexLabels_.end());
  std::sort(edgeLabels_.begin(), edgeLabels_.end());
  vertexBuckets_ = static_cast<std::uint32_t>(vertexLabels_.size() + 1);
  edgeBuckets_ = static_cast<std::uint32_t>(edgeLabels_.size() + 1);
  decoded_.push_back(Decoded{});
  for (std::uint32_t b = 0; b < vertexBuckets_; ++b) decoded_.push_back(Decoded{Type::Center, b});
  const auto cc = static_cast<std::uint32_t>(c);
  auto push = [&](SegmentKind kind, std::uint32_t in, std::uint32_t out) {
    for (std::uint32_t b = 0; b < edgeBuckets_; ++b) decoded_.push_back(Decoded{Type::Edge, b, kind, in, out});
  };
  for (SegmentKind kind : kSlotKinds)
    for (std::uint32_t j = 1; j <= cc; ++j) {
      bool inSide = kind == SegmentKind::InToCenter || kind == SegmentKind::CenterToIn;
      push(kind, inSide ? j : 0, inSide ? 0 : j);
    }
  for (SegmentKind kind : {SegmentKind::InToOut, SegmentKind::OutToIn})
    for (std::uint32_t i = 1; i <= cc; ++i)
      for (std::uint32_t o = 1; o <= cc; ++o) push(kind, i, o);
  push(SegmentKind::Loop, 0, 0);
}

std::uint32_t MicroLetters::vertexBucket(const std::string& label) const { return bucketOf(vertexLabels_, label); }
std::uint32_t MicroLetters::edgeBucket(const std::string& label) const { return bucketOf(edgeLabels_, label); }

std::uint32_t MicroLetters::edgeLetter(SegmentKind kind, std::uint32_t in, std::uint32_t out,
                                       std::uint32_t bucket) const {
  const auto cc = static_cast<std::uint32_t>(c_);
  std::uint32_t index = 0;
  switch (kind) {
    case SegmentKind::InToCenter: index = in - 1; break;
    case SegmentKind::CenterToIn: index = cc + in - 1; break;
    case SegmentKind::CenterToOut: index = 2 * cc + out - 1; break;
    case SegmentKind::OutToCenter: index = 3 * cc + out - 1; break;
    case SegmentKind::InToOut: index = 4 * cc + (in - 1) * cc + (out - 1); break;
    case SegmentKind::OutToIn: index = 4 * cc + cc * cc + (in - 1) * cc + (out - 1); break;
    case SegmentKind::Loop: index = 4 * cc + 2 * cc * cc; break;
  }
  return 1 + vertexBuckets_ + index * edgeBuckets_ + bucket;
}

std::vector<std::uint32_t> MicroLetters::word(const UnitView& v, std::vector<std::uint32_t>* order) const {
  if (v.width() > c_) throw InvalidArgument("symbol wider than the micro alphabet");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 0; i < v.segments.size(); ++i) {
    const UnitSegment& s = v.segments[i];
    edges.emplace_back(edgeLetter(s.kind, s.in, s.out, edgeBucket(s.label)), i);
  }
  std::sort(edges.begin(), edges.end());
  std::vector<std::uint32_t> w{0};
  if (order) order->assign(1, UINT32_MAX);
  if (v.hasCenter) {
    w.push_back(centerLetter(vertexBucket(v.centerLabel)));
    if (order) order->push_back(UINT32_MAX);
  }
  for (auto [letter, i] : edges) {
    w.push_back(letter);
    if (order) order->push_back(i);
  }
  return w;
}

bool MicroDfa::isSink(std::uint32_t s) const {
  if (accept[s]) return false;
  const std::uint32_t n = letterCount();
  for (std::uint32_t l = 0; l < n; ++l)
    if (next(s, l) != s) return false;
  return true;
}

MicroDfa microFromFunction(std::vector<std::string> vars, std::uint32_t bases, std::uint64_t initial,
                           const MicroStep& step, const std::function<bool(std::uint64_t)>& accept,
                           const MicroLimits& limits) {
  MicroDfa dfa;
  dfa.vars = std::move(vars);
  dfa.bases = bases;
  const std::uint32_t letters = dfa.letterCount();
  const std::uint32_t v = static_cast<std::uint32_t>(dfa.vars.size());
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::vector<std::uint64_t> keys;
  constexpr std::uint32_t kSink = 0;
  keys.push_back(0);  // placeholder for the sink
  dfa.accept.push_back(false);
  auto intern = [&](std::uint64_t key) {
    auto [it, fresh] = index.emplace(key, static_cast<std::uint32_t>(keys.size()));
    if (fresh) {
      keys.push_back(key);
      dfa.accept.push_back(accept(key));
      checkSize(keys.size(), letters, limits);
    }
    return it->second;
  };
  dfa.initial = intern(initial);
  dfa.delta.assign(letters, kSink);
  for (std::uint32_t s = 1; s < keys.size(); ++s) {
    dfa.delta.resize((std::size_t{s} + 1) * letters);
    for (std::uint32_t l = 0; l < letters; ++l) {
      auto n = step(keys[s], l >> v, l & ((1u << v) - 1));
      dfa.delta[std::size_t{s} * letters + l] = n ? intern(*n) : kSink;
    }
  }
  dfa.states = static_cast<std::uint32_t>(keys.size());
  return microMinimize(dfa);
}

MicroDfa microConst(bool value, std::uint32_t bases) {
  MicroDfa dfa;
  dfa.bases = bases;
  dfa.states = 1;
  dfa.delta.assign(bases, 0);
  dfa.accept = {value};
  return dfa;
}

MicroDfa microComplement(MicroDfa dfa) {
  dfa.accept.flip();
  return dfa;
}

MicroDfa microProduct(const MicroDfa& a, const MicroDfa& b, bool conjunction, const MicroLimits& limits) {
  if (a.bases != b.bases) throw InvalidArgument("micro automata over different letter sets");
  MicroDfa out;
  std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(), std::back_inserter(out.vars));
  out.bases = a.bases;
  const std::uint32_t letters = out.letterCount();
  const auto mapA = restriction(a, out.vars);
  const auto mapB = restriction(b, out.vars);
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  auto intern = [&](std::uint32_t x, std::uint32_t y) {
    auto [it, fresh] = index.emplace((std::uint64_t{x} << 32) | y, static_cast<std::uint32_t>(pairs.size()));
    if (fresh) {
      pairs.emplace_back(x, y);
      out.accept.push_back(conjunction ? (a.accept[x] && b.accept[y]) : (a.accept[x] || b.accept[y]));
      checkSize(pairs.size(), letters, limits);
    }
    return it->second;
  };
  out.initial = intern(a.initial, b.initial);
  for (std::uint32_t s = 0; s < pairs.size(); ++s) {
    out.delta.resize((std::size_t{s} + 1) * letters);
    auto [x, y] = pairs[s];
    for (std::uint32_t l = 0; l < letters; ++l)
      out.delta[std::size_t{s} * letters + l] = intern(a.next(x, mapA[l]), b.next(y, mapB[l]));
  }
  out.states = static_cast<std::uint32_t>(pairs.size());
  return microMinimize(out);
}

MicroDfa microProject(const MicroDfa& dfa, const std::string& var, const MicroLimits& limits) {
  auto it = std::find(dfa.vars.begin(), dfa.vars.end(), var);
  if (it == dfa.vars.end()) return dfa;
  const auto p = static_cast<std::uint32_t>(it - dfa.vars.begin());
  MicroDfa out;
  out.vars = dfa.vars;
  out.vars.erase(out.vars.begin() + p);
  out.bases = dfa.bases;
  const std::uint32_t letters = out.letterCount();
  const std::uint32_t low = (1u << p) - 1;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VectorHash> index;
  std::vector<std::vector<std::uint32_t>> sets;
  auto intern = [&](std::vector<std::uint32_t> set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    auto [it2, fresh] = index.emplace(set, static_cast<std::uint32_t>(sets.size()));
    if (fresh) {
      bool acc = false;
      for (auto s : set) acc = acc || dfa.accept[s];
      out.accept.push_back(acc);
      sets.push_back(std::move(set));
      checkSize(sets.size(), letters, limits);
    }
    return it2->second;
  };
  out.initial = intern({dfa.initial});
  std::vector<std::uint32_t> next;
  for (std::uint32_t s = 0; s < sets.size(); ++s) {
    out.delta.resize((std::size_t{s} + 1) * letters);
    for (std::uint32_t l = 0; l < letters; ++l) {
      const std::uint32_t spread = ((l & ~low) << 1) | (l & low);
      next.clear();
      for (auto q : sets[s]) {
        next.push_back(dfa.next(q, spread));
        next.push_back(dfa.next(q, spread | (1u << p)));
      }
      out.delta[std::size_t{s} * letters + l] = intern(next);
    }
  }
  out.states = static_cast<std::uint32_t>(sets.size());
  return microMinimize(out);
}

MicroDfa microMinimize(const MicroDfa& input) {
  const std::uint32_t letters = input.letterCount();
  // Reachable states, renumbered in BFS order.
  std::vector<std::uint32_t> order{input.initial};
  std::vector<std::uint32_t> renum(input.states, UINT32_MAX);
  renum[input.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::uint32_t l = 0; l < letters; ++l) {
      auto n = input.next(order[i], l);
      if (renum[n] == UINT32_MAX) renum[n] = static_cast<std::uint32_t>(order.size()), order.push_back(n);
    }
  const std::size_t n = order.size();
  std::vector<std::uint32_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = input.accept[order[i]] ? 1 : 0;
  std::size_t classes = 0;
  std::vector<std::uint32_t> sig(letters + 1);
  while (true) {
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VectorHash> refined;
    std::vector<std::uint32_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      sig[0] = cls[i];
      for (std::uint32_t l = 0; l < letters; ++l) sig[l + 1] = cls[renum[input.next(order[i], l)]];
      next[i] = refined.emplace(sig, static_cast<std::uint32_t>(refined.size())).first->second;
    }
    cls = std::move(next);
    if (refined.size() == classes) break;
    classes = refined.size();
  }
  MicroDfa out;
  out.vars = input.vars;
  out.bases = input.bases;
  out.states = static_cast<std::uint32_t>(classes);
  out.initial = cls[0];
  out.accept.assign(classes, false);
  out.delta.assign(classes * letters, 0);
  for (std::size_t i = 0; i < n; ++i) {
    out.accept[cls[i]] = input.accept[order[i]];
    for (std::uint32_t l = 0; l < letters; ++l)
      out.delta[std::size_t{cls[i]} * letters + l] = cls[renum[input.next(order[i], l)]];
  }
  return out;
}

bool microAccepts(const MicroDfa& dfa, const std::vector<std::uint32_t>& letters) {
  std::uint32_t s = dfa.initial;
  for (auto l : letters) s = dfa.next(s, l);
  return dfa.accept[s];
}

bool microEquivalent(const MicroDfa& a, const MicroDfa& b, const MicroLimits& limits) {
  // Symmetric difference is empty iff "a and not b" and "b and not a" are.
  auto empty = [](const MicroDfa& d) { return std::none_of(d.accept.begin(), d.accept.end(), [](bool x) { return x; }); };
  return empty(microProduct(a, microComplement(b), true, limits)) &&
         empty(microProduct(b, microComplement(a), true, limits));
}

}  // namespace slicecount
