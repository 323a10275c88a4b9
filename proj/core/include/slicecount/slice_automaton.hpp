#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "slicecount/slice.hpp"

namespace slicecount {

using SymbolId = std::uint32_t;
using StateId = std::uint32_t;

enum class SegmentKind : std::uint8_t { InToCenter, CenterToIn, CenterToOut, OutToCenter, InToOut, OutToIn, Loop };

inline bool centerIsSource(SegmentKind k) {
  return k == SegmentKind::CenterToIn || k == SegmentKind::CenterToOut || k == SegmentKind::Loop;
}
inline bool centerIsTarget(SegmentKind k) {
  return k == SegmentKind::InToCenter || k == SegmentKind::OutToCenter || k == SegmentKind::Loop;
}
// First segment of its edge in string order: the center end of an edge that
// continues to the out side, or a loop.
inline bool isOriginSegment(SegmentKind k) {
  return k == SegmentKind::CenterToOut || k == SegmentKind::OutToCenter || k == SegmentKind::Loop;
}
// Last segment of its edge: it carries the composed edge's label and weight.
inline bool isCompletingSegment(SegmentKind k) {
  return k == SegmentKind::InToCenter || k == SegmentKind::CenterToIn || k == SegmentKind::Loop;
}
inline bool touchesOut(SegmentKind k) {
  return k == SegmentKind::CenterToOut || k == SegmentKind::OutToCenter || k == SegmentKind::InToOut ||
         k == SegmentKind::OutToIn;
}

// One edge of a unit slice seen from its frontier slots. `in` / `out` are the
// 1-based frontier numbers the segment touches, 0 if none.
struct UnitSegment {
  SegmentKind kind = SegmentKind::Loop;
  std::uint32_t in = 0;
  std::uint32_t out = 0;
  std::string label;
  std::uint32_t edge = 0;  // index into the viewed slice's edges

  bool centerIsSource() const { return slicecount::centerIsSource(kind); }
  bool centerIsTarget() const { return slicecount::centerIsTarget(kind); }
};

struct UnitView {
  std::uint32_t inCount = 0;
  std::uint32_t outCount = 0;
  bool hasCenter = false;
  std::string centerLabel;
  std::vector<UnitSegment> segments;  // sorted by (kind, in, out, label)
  // +1 / -1 per frontier number (index 0 unused), as Slice::orientation.
  std::vector<int> inOrientation;
  std::vector<int> outOrientation;

  std::uint32_t width() const { return std::max(inCount, outCount); }
};

// Throws InvalidArgument unless s is a normalized unit slice.
UnitView makeUnitView(const Slice& s);

// Interned normalized, stripped unit slices. Automata built over one alphabet
// accept symbols added after their construction.
class SliceAlphabet {
 public:
  // Normalizes and strips s first.
  SymbolId intern(const Slice& s);
  std::optional<SymbolId> find(const Slice& s) const;
  const Slice& symbol(SymbolId id) const { return symbols_.at(id); }
  const UnitView& view(SymbolId id) const { return views_.at(id); }
  const std::string& key(SymbolId id) const { return keys_.at(id); }
  std::size_t size() const { return symbols_.size(); }

 private:
  std::vector<Slice> symbols_;
  std::vector<UnitView> views_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, SymbolId> index_;
};

using AlphabetPtr = std::shared_ptr<SliceAlphabet>;

// Byte-string keyed state table.
class StateTable {
 public:
  StateId intern(const std::string& key);
  const std::string& key(StateId id) const { return keys_[id]; }
  std::size_t size() const { return keys_.size(); }

 private:
  std::vector<std::string> keys_;
  std::unordered_map<std::string, StateId> index_;
};

// Deterministic automaton over a slice alphabet. A missing transition means the
// run is dead. Transitions are computed lazily and cached; instances are not
// safe for concurrent use.
class SliceAutomaton {
 public:
  explicit SliceAutomaton(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}
  virtual ~SliceAutomaton() = default;

  virtual std::string name() const = 0;
  virtual StateId initial() = 0;
  virtual bool accepting(StateId s) = 0;
  virtual std::size_t stateCount() const = 0;
  std::optional<StateId> step(StateId s, SymbolId a);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  void setStateCap(std::size_t cap) { stateCap_ = cap; }

 protected:
  virtual std::optional<StateId> computeStep(StateId s, SymbolId a) = 0;
  // Throws ResourceError when `count` exceeds the cap.
  void checkCap(std::size_t count) const;

 private:
  AlphabetPtr alphabet_;
  std::unordered_map<std::uint64_t, StateId> cache_;
  std::size_t stateCap_ = std::size_t{1} << 22;
};

using AutomatonPtr = std::shared_ptr<SliceAutomaton>;

AutomatonPtr makeConst(AlphabetPtr alphabet, bool value);
// Children are stepped in order; the first dead child kills the product.
AutomatonPtr makeAnd(AlphabetPtr alphabet, std::vector<AutomatonPtr> children);
AutomatonPtr makeOr(AlphabetPtr alphabet, std::vector<AutomatonPtr> children);
AutomatonPtr makeNot(AlphabetPtr alphabet, AutomatonPtr child);
// Rejects symbols wider than c.
AutomatonPtr makeWidth(AlphabetPtr alphabet, std::size_t c);
// Accepts exactly the nonempty strings that compose: the first symbol is
// initial, consecutive symbols glue, the last is final.
AutomatonPtr makeGluing(AlphabetPtr alphabet);

// Runs the automaton on the symbols of `word` (interned on the fly).
bool accepts(SliceAutomaton& a, const std::vector<Slice>& word);

// Every normalized unit symbol of width <= c over the given labels, with at most
// maxLoops loops. Sorted by canonical form.
std::vector<Slice> enumerateUnitSymbols(std::size_t c, const std::vector<std::string>& vertexLabels = {kDefaultLabel},
                                        const std::vector<std::string>& edgeLabels = {kDefaultLabel},
                                        std::size_t maxLoops = 1);

}  // namespace slicecount
