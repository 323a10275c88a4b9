#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slicecount/formula.hpp"
#include "slicecount/mso_compiler.hpp"
#include "slicecount/ordering.hpp"
#include "slicecount/slice_graph.hpp"

namespace slicecount {

struct CountQuery {
  OrderedDigraph graph;
  FormulaPtr formula;
  std::size_t k = 1;  // paths
  std::size_t z = 1;  // zig-zag bound
  // Required vertex count; any when empty.
  std::optional<std::size_t> l;
  // Replaces the graph's semigroup. Only the trivial semigroup may differ from
  // the graph's; weights are then dropped.
  std::optional<WeightSemigroup> omega;
  bool maximal = false;                   // count only maximum-weight subgraphs
  std::optional<std::size_t> witnessCap;  // list up to this many subgraphs
  // Build every intermediate slice graph separately instead of the fused product.
  bool staged = false;
  CompileOptions compile;
};

struct SubgraphWitness {
  std::vector<VertexId> vertices;  // ascending
  std::vector<EdgeId> edges;       // ascending
  Weight weight = 0;
};

struct StageStats {
  std::string name;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  double millis = 0;
};

struct CountResult {
  BigCount count = 0;
  std::optional<Weight> maxWeight;
  std::vector<SubgraphWitness> witnesses;
  std::vector<StageStats> stats;
  std::vector<std::string> warnings;
  std::size_t c = 0;  // slice-width bound actually used
  std::size_t q = 0;  // cut-width of the ordering
};

// Number of subgraphs H of the graph with l vertices such that H satisfies the
// formula, is a union of k directed paths and no simple path or cycle of H
// crosses a cut of the ordering more than z times. Throws InvalidArgument on a malformed query
// and ResourceError when a cap is hit.
CountResult countSubgraphs(const CountQuery& query);

// hamiltonian, connectedSpanning, forest, bipartite. hamiltonian forces l = n,
// k = 2 and the trivial semigroup; connectedSpanning forces l = n.
CountQuery presetQuery(const std::string& name, const OrderedDigraph& g, std::size_t k, std::size_t z,
                       std::optional<std::size_t> l);
const std::vector<std::string>& presetNames();

struct AuditReport {
  bool passed = true;
  std::vector<std::string> failures;
  std::size_t checked = 0;
};

// Re-checks every witness with the brute-force oracle.
AuditReport auditWitnesses(const CountResult& result, const CountQuery& query);

struct OracleCount {
  BigCount count = 0;
  std::optional<Weight> maxWeight;
  std::vector<SubgraphWitness> witnesses;
};
// The same query answered by exhaustive enumeration.
OracleCount oracleCount(const CountQuery& query);

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct CorpusEntry {
  std::string name;
  std::string preset;
  CountQuery query;
};

// Desk-scale (graph, query) pairs, byte-stable for a given seed.
std::vector<CorpusEntry> bundledCorpus(std::uint64_t seed = kDefaultSeed, std::size_t size = 120);

struct BenchRow {
  std::string name;
  std::string preset;
  std::size_t n = 0, m = 0, k = 0, z = 0;
  std::optional<std::size_t> l;
  bool maximal = false;
  std::string pipeline;  // decimal count, or "error"
  std::string oracle;
  double pipelineMillis = 0;
  double oracleMillis = 0;
  bool match = false;
  std::string error;
};

// Runs pipeline and oracle on every entry with `jobs` workers; rows keep corpus order.
std::vector<BenchRow> runBench(const std::vector<CorpusEntry>& corpus, std::size_t jobs = 1);
std::string formatBenchTable(const std::vector<BenchRow>& rows);

}  // namespace slicecount
