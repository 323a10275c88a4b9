#include "slicecount/semigroup.hpp"

#include <algorithm>
#include <charconv>

#include "slicecount/errors.hpp"

namespace slicecount {

namespace {

std::string located(const std::string& what, std::size_t line, std::size_t column, const std::string& source) {
  std::string where = source;
  if (line != 0) {
    where += (where.empty() ? "line " : ":") + std::to_string(line);
    if (column != 0) where += ":" + std::to_string(column);
  }
  return where.empty() ? what : where + ": " + what;
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column, const std::string& source)
    : Error(located(what, line, column, source)), message_(what), line_(line), column_(column) {}

WeightSemigroup WeightSemigroup::boundedSum(std::uint32_t cap) {
  if (cap > (1u << 20)) throw InvalidArgument("boundedSum cap too large");
  return WeightSemigroup(Kind::BoundedSum, std::size_t{cap} + 1, 0);
}

WeightSemigroup WeightSemigroup::table(std::vector<std::string> names,
                                       std::vector<std::vector<Weight>> cayley,
                                       Weight identity) {
  const std::size_t n = names.size();
  if (n == 0) throw InvalidArgument("table semigroup needs at least one element");
  if (identity >= n) throw InvalidArgument("identity out of range");
  if (cayley.size() != n) throw InvalidArgument("cayley table has wrong row count");
  for (const auto& row : cayley) {
    if (row.size() != n) throw InvalidArgument("cayley table row has wrong length");
    for (Weight w : row)
      if (w >= n) throw InvalidArgument("cayley table entry out of range");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (names[i] == names[j]) throw InvalidArgument("duplicate element name " + names[i]);
  for (std::size_t a = 0; a < n; ++a) {
    if (cayley[identity][a] != a || cayley[a][identity] != a)
      throw InvalidArgument("identity is not neutral for " + names[a]);
    for (std::size_t b = 0; b < n; ++b) {
      if (cayley[a][b] != cayley[b][a])
        throw InvalidArgument("table is not commutative at (" + names[a] + "," + names[b] + ")");
      for (std::size_t c = 0; c < n; ++c)
        if (cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]])
          throw InvalidArgument("table is not associative at (" + names[a] + "," + names[b] +
                                "," + names[c] + ")");
    }
  }
  WeightSemigroup s(Kind::Table, n, identity);
  s.names_ = std::move(names);
  s.cayley_.reserve(n * n);
  for (const auto& row : cayley) s.cayley_.insert(s.cayley_.end(), row.begin(), row.end());
  return s;
}

Weight WeightSemigroup::combine(Weight a, Weight b) const {
  if (kind_ == Kind::BoundedSum) return std::min<Weight>(a + b, cap());
  return cayley_[a * size_ + b];
}

std::string WeightSemigroup::name(Weight w) const {
  if (kind_ == Kind::BoundedSum) return std::to_string(w);
  return names_.at(w);
}

Weight WeightSemigroup::parse(std::string_view text) const {
  if (kind_ == Kind::Table) {
    auto it = std::find(names_.begin(), names_.end(), text);
    if (it == names_.end()) throw InvalidArgument("unknown semigroup element " + std::string(text));
    return static_cast<Weight>(it - names_.begin());
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw InvalidArgument("weight is not a nonnegative integer: " + std::string(text));
  return static_cast<Weight>(std::min<std::uint64_t>(value, cap()));
}

std::string WeightSemigroup::describe() const {
  if (kind_ == Kind::BoundedSum) return "boundedSum(" + std::to_string(cap()) + ")";
  std::string out = "table(";
  for (std::size_t i = 0; i < names_.size(); ++i) out += (i ? "," : "") + names_[i];
  return out + ")";
}

bool WeightSemigroup::operator==(const WeightSemigroup& other) const {
  return kind_ == other.kind_ && size_ == other.size_ && identity_ == other.identity_ &&
         names_ == other.names_ && cayley_ == other.cayley_;
}

}  // namespace slicecount
