#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace slicecount {

// Elements are represented by their rank in the total order, 0-based.
using Weight = std::uint32_t;

// A finite commutative monoid with a total order on its elements.
class WeightSemigroup {
 public:
  enum class Kind { BoundedSum, Table };

  // {0..cap} with saturating addition; the order is numeric.
  static WeightSemigroup boundedSum(std::uint32_t cap);
  // The one-element semigroup.
  static WeightSemigroup trivial() { return boundedSum(0); }
  // names[i] is element i; cayley[a][b] is a*b. Throws InvalidArgument unless the
  // table is commutative, associative and has `identity` as neutral element.
  static WeightSemigroup table(std::vector<std::string> names,
                               std::vector<std::vector<Weight>> cayley, Weight identity);

  WeightSemigroup() : WeightSemigroup(trivial()) {}

  Kind kind() const { return kind_; }
  std::size_t size() const { return size_; }
  Weight identity() const { return identity_; }
  std::uint32_t cap() const { return static_cast<std::uint32_t>(size_ - 1); }

  Weight combine(Weight a, Weight b) const;
  std::string name(Weight w) const;
  // Accepts a decimal for boundedSum (saturated at cap) and an element name for tables.
  Weight parse(std::string_view text) const;
  std::string describe() const;

  bool operator==(const WeightSemigroup& other) const;

 private:
  WeightSemigroup(Kind kind, std::size_t size, Weight identity)
      : kind_(kind), size_(size), identity_(identity) {}

  Kind kind_;
  std::size_t size_;
  Weight identity_;
  std::vector<std::string> names_;
  std::vector<Weight> cayley_;  // row-major size_*size_, table kind only
};

}  // namespace slicecount
