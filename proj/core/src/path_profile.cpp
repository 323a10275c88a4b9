// Zig-zag and unitability automata. Both guess directed simple paths (zig-zag
// also closed ones, i.e. simple cycles) and track, for each guessed path, its
// profile at the current cut: the maximal runs of the path inside the prefix,
// each given by how it is entered (path start or an edge crossing the cut) and
// left (path end or a crossing edge). Runs never share a frontier number;
// crossing numbers refer to the out-frontier of the last symbol.
#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "slicecount/errors.hpp"
#include "slicecount/native_automata.hpp"

namespace slicecount {

namespace {

constexpr std::uint8_t kOpen = 0;  // START as an entry, END as an exit

struct Run {
  std::uint8_t entry = kOpen;
  std::uint8_t exit = kOpen;
  bool operator<(const Run& o) const { return entry != o.entry ? entry < o.entry : exit < o.exit; }
  bool operator==(const Run& o) const { return entry == o.entry && exit == o.exit; }
};

using Profile = std::vector<Run>;  // sorted

bool isComplete(const Profile& p) { return p.size() == 1 && p[0].entry == kOpen && p[0].exit == kOpen; }

std::size_t crossings(const Profile& p) {
  std::size_t n = 0;
  for (const Run& r : p) n += (r.entry != kOpen) + (r.exit != kOpen);
  return n;
}

struct PathOption {
  Profile profile;
  std::uint64_t segments = 0;  // bit i: view.segments[i] lies on the path
  bool center = false;
};

// Normalizes a candidate profile; false if it cannot belong to a simple path.
bool finish(Profile& p) {
  int starts = 0, ends = 0;
  for (const Run& r : p) starts += r.entry == kOpen, ends += r.exit == kOpen;
  if (starts > 1 || ends > 1) return false;
  std::sort(p.begin(), p.end());
  for (const Run& r : p)
    if (r.entry == kOpen && r.exit == kOpen && p.size() > 1) return false;
  return true;
}

// All ways one path with profile p continues through the symbol v. With
// `closing`, a profile whose single run enters and leaves at the center may close
// into a simple cycle, reported as a complete profile.
std::vector<PathOption> pathOptions(const Profile& p, const UnitView& v, bool closing = false) {
  std::vector<PathOption> out;
  std::vector<int> segAtIn(v.inCount + 1, -1);
  for (std::size_t i = 0; i < v.segments.size(); ++i)
    if (v.segments[i].in) segAtIn[v.segments[i].in] = static_cast<int>(i);
  Profile runs = p;
  std::uint64_t forced = 0;
  int rin = -1, rout = -1;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    Run& run = runs[r];
    if (run.exit != kOpen) {
      if (run.exit > v.inCount) return out;
      const int i = segAtIn[run.exit];
      const UnitSegment& seg = v.segments[i];
      forced |= std::uint64_t{1} << i;
      if (seg.kind == SegmentKind::InToOut) {
        run.exit = static_cast<std::uint8_t>(seg.out);
      } else if (seg.kind == SegmentKind::InToCenter) {
        if (rin >= 0) return out;
        rin = static_cast<int>(r);
      } else {
        return out;
      }
    }
    if (run.entry != kOpen) {
      if (run.entry > v.inCount) return out;
      const int i = segAtIn[run.entry];
      const UnitSegment& seg = v.segments[i];
      forced |= std::uint64_t{1} << i;
      if (seg.kind == SegmentKind::OutToIn) {
        run.entry = static_cast<std::uint8_t>(seg.out);
      } else if (seg.kind == SegmentKind::CenterToIn) {
        if (rout >= 0) return out;
        rout = static_cast<int>(r);
      } else {
        return out;
      }
    }
  }
  if (rin < 0 && rout < 0) {
    PathOption o{runs, forced, false};
    if (finish(o.profile)) out.push_back(std::move(o));
  }
  if (!v.hasCenter) return out;
  if (rin >= 0 && rin == rout) {
    if (closing && runs.size() == 1) out.push_back(PathOption{Profile{Run{}}, forced, true});
    return out;
  }
  // (endpoint, segment bit) choices for the center's in- and out-edge on the path.
  std::vector<std::pair<std::uint8_t, std::uint64_t>> ins, outs;
  if (rin >= 0) {
    ins.emplace_back(runs[rin].entry, 0);
  } else {
    ins.emplace_back(kOpen, 0);
    for (std::size_t i = 0; i < v.segments.size(); ++i)
      if (v.segments[i].kind == SegmentKind::OutToCenter)
        ins.emplace_back(static_cast<std::uint8_t>(v.segments[i].out), std::uint64_t{1} << i);
  }
  if (rout >= 0) {
    outs.emplace_back(runs[rout].exit, 0);
  } else {
    outs.emplace_back(kOpen, 0);
    for (std::size_t i = 0; i < v.segments.size(); ++i)
      if (v.segments[i].kind == SegmentKind::CenterToOut)
        outs.emplace_back(static_cast<std::uint8_t>(v.segments[i].out), std::uint64_t{1} << i);
  }
  Profile rest;
  for (std::size_t r = 0; r < runs.size(); ++r)
    if (static_cast<int>(r) != rin && static_cast<int>(r) != rout) rest.push_back(runs[r]);
  for (const auto& [entry, inBit] : ins)
    for (const auto& [exit, outBit] : outs) {
      PathOption o{rest, forced | inBit | outBit, true};
      o.profile.push_back(Run{entry, exit});
      if (finish(o.profile)) out.push_back(std::move(o));
    }
  return out;
}

void appendProfile(std::string& key, const Profile& p) {
  key += static_cast<char>(p.size());
  for (const Run& r : p) key += static_cast<char>(r.entry), key += static_cast<char>(r.exit);
}

Profile readProfile(const std::string& key, std::size_t& at) {
  Profile p(static_cast<std::uint8_t>(key[at++]));
  for (Run& r : p) {
    r.entry = static_cast<std::uint8_t>(key[at++]);
    r.exit = static_cast<std::uint8_t>(key[at++]);
  }
  return p;
}

void checkSlots(const UnitView& v) {
  if (v.width() > 250) throw ResourceError("path profiles support at most 250 frontier numbers");
  if (v.segments.size() > 64) throw ResourceError("path profiles support at most 64 edges per symbol");
}

// Subset-construction state of a path-guessing automaton; NFA states are byte
// strings, the DFA state is their sorted set.
class PathSetAutomaton : public SliceAutomaton {
 public:
  using SliceAutomaton::SliceAutomaton;
  std::size_t stateCount() const override { return sets_.size(); }

 protected:
  StateId internSet(std::set<std::string> members) {
    std::string key;
    for (const auto& m : members) {
      key += static_cast<char>(m.size() & 0xff);
      key += static_cast<char>(m.size() >> 8);
      key += m;
    }
    auto before = table_.size();
    auto id = table_.intern(key);
    if (table_.size() != before) {
      sets_.emplace_back(members.begin(), members.end());
      checkCap(sets_.size());
    }
    return id;
  }

  std::vector<std::vector<std::string>> sets_;
  StateTable table_;
};

// NFA state: one flag byte (some cut was crossed more than z times) and the
// profile of the guessed path. The language is the complement: a run dies once
// a flagged path is complete.
class ZigZagAutomaton final : public PathSetAutomaton {
 public:
  ZigZagAutomaton(AlphabetPtr alphabet, std::size_t z) : PathSetAutomaton(std::move(alphabet)), z_(z) {}
  std::string name() const override { return "zigzag<=" + std::to_string(z_); }
  StateId initial() override {
    std::string s(1, '\0');
    appendProfile(s, {});
    return internSet({s});
  }
  bool accepting(StateId) override { return true; }

 protected:
  std::optional<StateId> computeStep(StateId s, SymbolId a) override {
    const UnitView& v = alphabet()->view(a);
    checkSlots(v);
    std::set<std::string> next;
    for (const std::string& member : sets_[s]) {
      std::size_t at = 1;
      const bool flag = member[0] != 0;
      Profile p = readProfile(member, at);
      for (PathOption& o : pathOptions(p, v, true)) {
        const bool f = flag || crossings(o.profile) > z_;
        if (isComplete(o.profile)) {
          if (f) return std::nullopt;
          continue;  // a finished path without violation says nothing more
        }
        std::string key(1, f ? '\1' : '\0');
        appendProfile(key, o.profile);
        next.insert(std::move(key));
      }
    }
    return internSet(std::move(next));
  }

 private:
  std::size_t z_;
};

// NFA state: the sorted profiles of k paths. A transition must cover the
// center and every segment of the symbol by at least one path.
class UnitableAutomaton final : public PathSetAutomaton {
 public:
  UnitableAutomaton(AlphabetPtr alphabet, std::size_t k) : PathSetAutomaton(std::move(alphabet)), k_(k) {}
  std::string name() const override { return "unitable<=" + std::to_string(k_); }
  StateId initial() override {
    std::string s;
    for (std::size_t i = 0; i < k_; ++i) appendProfile(s, {});
    return internSet({s});
  }
  bool accepting(StateId s) override {
    for (const std::string& member : sets_[s]) {
      std::size_t at = 0;
      bool ok = true;
      for (std::size_t i = 0; i < k_ && ok; ++i) {
        Profile p = readProfile(member, at);
        ok = p.empty() || isComplete(p);
      }
      if (ok) return true;
    }
    return false;
  }

 protected:
  std::optional<StateId> computeStep(StateId s, SymbolId a) override {
    const UnitView& v = alphabet()->view(a);
    checkSlots(v);
    for (const UnitSegment& seg : v.segments)
      if (seg.kind == SegmentKind::Loop) return std::nullopt;
    const std::uint64_t all = v.segments.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << v.segments.size()) - 1;
    std::map<Profile, std::vector<PathOption>> memo;
    std::set<std::string> next;
    std::vector<const PathOption*> pick(k_);
    for (const std::string& member : sets_[s]) {
      std::vector<const std::vector<PathOption>*> options(k_);
      std::size_t at = 0;
      bool viable = true;
      for (std::size_t i = 0; i < k_; ++i) {
        Profile p = readProfile(member, at);
        auto it = memo.find(p);
        if (it == memo.end()) it = memo.emplace(p, pathOptions(p, v)).first;
        options[i] = &it->second;
        viable = viable && !it->second.empty();
      }
      if (!viable) continue;
      // Paths with equal profiles are interchangeable: choose non-decreasing
      // option indices among them.
      std::vector<std::size_t> idx(k_, 0);
      std::function<void(std::size_t, std::uint64_t, bool)> rec = [&](std::size_t i, std::uint64_t used, bool center) {
        if (i == k_) {
          if (used != all || (v.hasCenter && !center)) return;
          std::vector<const Profile*> profiles;
          for (auto* o : pick) profiles.push_back(&o->profile);
          std::sort(profiles.begin(), profiles.end(), [](const Profile* x, const Profile* y) { return *x < *y; });
          std::string key;
          for (auto* p : profiles) appendProfile(key, *p);
          next.insert(std::move(key));
          return;
        }
        std::size_t from = (i > 0 && options[i] == options[i - 1]) ? idx[i - 1] : 0;
        for (std::size_t j = from; j < options[i]->size(); ++j) {
          idx[i] = j;
          pick[i] = &(*options[i])[j];
          rec(i + 1, used | pick[i]->segments, center || pick[i]->center);
        }
      };
      rec(0, 0, false);
    }
    if (next.empty()) return std::nullopt;
    return internSet(std::move(next));
  }

 private:
  std::size_t k_;
};

}  // namespace

AutomatonPtr makeZigZag(AlphabetPtr alphabet, std::size_t z) {
  if (z < 1) throw InvalidArgument("zigzag needs z >= 1");
  return std::make_shared<ZigZagAutomaton>(std::move(alphabet), z);
}

AutomatonPtr makeUnitable(AlphabetPtr alphabet, std::size_t k) {
  if (k < 1) throw InvalidArgument("unitable needs k >= 1");
  return std::make_shared<UnitableAutomaton>(std::move(alphabet), k);
}

}  // namespace slicecount
