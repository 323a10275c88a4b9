#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slicecount/slice_automaton.hpp"

namespace slicecount {

// Letters of the micro-step encoding. A slice symbol is spelled as Sep, its
// center (if any), then one letter per segment in increasing letter order. A
// full letter is (base << v) | bits where bit i marks membership in variable i.
class MicroLetters {
 public:
  enum class Type : std::uint8_t { Sep, Center, Edge };
  struct Decoded {
    Type type = Type::Sep;
    std::uint32_t bucket = 0;
    SegmentKind kind = SegmentKind::Loop;
    std::uint32_t in = 0;
    std::uint32_t out = 0;
  };

  // Labels not listed fall into a shared last bucket.
  MicroLetters(std::size_t c, std::vector<std::string> vertexLabels = {}, std::vector<std::string> edgeLabels = {});

  std::size_t c() const { return c_; }
  std::uint32_t baseCount() const { return static_cast<std::uint32_t>(decoded_.size()); }
  const Decoded& decode(std::uint32_t base) const { return decoded_.at(base); }
  std::uint32_t vertexBucket(const std::string& label) const;
  std::uint32_t edgeBucket(const std::string& label) const;
  std::uint32_t centerLetter(std::uint32_t bucket) const { return 1 + bucket; }
  std::uint32_t edgeLetter(SegmentKind kind, std::uint32_t in, std::uint32_t out, std::uint32_t bucket) const;

  // Base letters of one symbol; `order[i]` receives the segment index spelled
  // by letter i (UINT32_MAX for Sep and the center).
  std::vector<std::uint32_t> word(const UnitView& v, std::vector<std::uint32_t>* order = nullptr) const;

 private:
  std::size_t c_;
  std::vector<std::string> vertexLabels_;
  std::vector<std::string> edgeLabels_;
  std::uint32_t vertexBuckets_;
  std::uint32_t edgeBuckets_;
  std::vector<Decoded> decoded_;
};

struct MicroLimits {
  std::size_t maxStates = std::size_t{1} << 18;
  std::size_t maxTransitions = std::size_t{1} << 27;
};

// Complete DFA over full micro letters.
struct MicroDfa {
  std::vector<std::string> vars;  // sorted, distinct
  std::uint32_t bases = 0;
  std::uint32_t states = 0;
  std::uint32_t initial = 0;
  std::vector<std::uint32_t> delta;  // states x letterCount()
  std::vector<bool> accept;

  std::uint32_t letterCount() const { return bases << vars.size(); }
  std::uint32_t next(std::uint32_t s, std::uint32_t letter) const {
    return delta[std::size_t{s} * letterCount() + letter];
  }
  // Non-accepting state that only loops to itself.
  bool isSink(std::uint32_t s) const;
};

using MicroStep = std::function<std::optional<std::uint64_t>(std::uint64_t state, std::uint32_t base, std::uint32_t bits)>;

// Explores the reachable part of an implicit automaton; a missing transition
// goes to a rejecting sink.
MicroDfa microFromFunction(std::vector<std::string> vars, std::uint32_t bases, std::uint64_t initial,
                           const MicroStep& step, const std::function<bool(std::uint64_t)>& accept,
                           const MicroLimits& limits = {});
MicroDfa microConst(bool value, std::uint32_t bases);
MicroDfa microComplement(MicroDfa dfa);
MicroDfa microProduct(const MicroDfa& a, const MicroDfa& b, bool conjunction, const MicroLimits& limits = {});
// Deletes the track of `var` and determinizes.
MicroDfa microProject(const MicroDfa& dfa, const std::string& var, const MicroLimits& limits = {});
// Reachable part, then Moore partition refinement.
MicroDfa microMinimize(const MicroDfa& dfa);
bool microAccepts(const MicroDfa& dfa, const std::vector<std::uint32_t>& letters);
// Language equality over the union of both variable sets.
bool microEquivalent(const MicroDfa& a, const MicroDfa& b, const MicroLimits& limits = {});

}  // namespace slicecount
