// slicecount: ordering tools, formula compilation, counting and oracle cross-checks.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "slicecount/decomposition.hpp"
#include "slicecount/errors.hpp"
#include "slicecount/pipeline.hpp"

namespace sc = slicecount;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kResource = 3, kAudit = 4, kParse = 5 };

struct CountFlags {
  std::string graph, ordering, formula;
  std::size_t k = 1, z = 1;
  std::optional<std::size_t> l;
  std::optional<std::uint32_t> weights;
  bool maximal = false;
  std::optional<std::size_t> witnesses;
  bool staged = false;
  bool verifyOrdering = false;
  bool audit = false;
  bool dslMacros = false;
  bool verbose = false;
  std::string json;
};

std::size_t envCap(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw sc::InvalidArgument(std::string("environment variable ") + name + " is not a number");
  }
}

sc::WeightSemigroup semigroupOf(const CountFlags& f) {
  return f.weights ? sc::WeightSemigroup::boundedSum(*f.weights) : sc::WeightSemigroup::trivial();
}

sc::OrderedDigraph loadOrdered(const std::string& graph, const std::string& ordering, const sc::WeightSemigroup& omega,
                               bool verify, std::size_t claimed) {
  sc::Digraph g = sc::loadDigraph(graph, omega);
  sc::Ordering o = sc::loadOrdering(ordering);
  sc::requirePermutation(g, o);
  if (verify) return sc::verifiedOrdering(g, o);
  return sc::OrderedDigraph{g, o, claimed, sc::BoundStatus::Claimed};
}

// A preset name, a formula file, or inline DSL text.
sc::CountQuery buildQuery(const CountFlags& f) {
  auto og = loadOrdered(f.graph, f.ordering, semigroupOf(f), f.verifyOrdering, f.z);
  sc::CountQuery q;
  const auto& presets = sc::presetNames();
  if (std::find(presets.begin(), presets.end(), f.formula) != presets.end()) {
    q = sc::presetQuery(f.formula, og, f.k, f.z, f.l);
  } else {
    q.graph = og;
    q.formula = std::filesystem::exists(f.formula) ? sc::loadFormula(f.formula) : sc::parseFormula(f.formula);
    q.k = f.k;
    q.z = f.z;
    q.l = f.l;
  }
  q.maximal = f.maximal;
  q.witnessCap = f.witnesses;
  if (f.audit && !q.witnessCap) q.witnessCap = 64;
  q.staged = f.staged;
  q.compile.nativeMacros = !f.dslMacros;
  q.compile.sliceStateCap = envCap("SLICECOUNT_STATE_CAP", q.compile.sliceStateCap);
  q.compile.limits.maxStates = envCap("SLICECOUNT_MICRO_STATES", q.compile.limits.maxStates);
  return q;
}

void addCountFlags(CLI::App* cmd, CountFlags& f) {
  cmd->add_option("graph", f.graph, "edge-list file")->required()->check(CLI::ExistingFile);
  cmd->add_option("ordering", f.ordering, "ordering file")->required()->check(CLI::ExistingFile);
  cmd->add_option("formula", f.formula, "preset name, formula file or inline formula")->required();
  cmd->add_option("--k", f.k, "number of paths")->check(CLI::PositiveNumber);
  cmd->add_option("--z", f.z, "zig-zag bound")->check(CLI::PositiveNumber);
  cmd->add_option("--l", f.l, "required vertex count");
  cmd->add_option("--weights", f.weights, "read edge weights in boundedSum(CAP)");
  cmd->add_flag("--maximal", f.maximal, "count maximum-weight subgraphs only");
  cmd->add_option("--witnesses", f.witnesses, "list up to N subgraphs");
  cmd->add_flag("--verify-ordering", f.verifyOrdering, "compute the ordering's zig-zag number first");
  cmd->add_flag("--verbose", f.verbose, "print stage statistics");
  cmd->add_option("--json", f.json, "write a machine-readable summary");
}

void printWitnesses(const std::vector<sc::SubgraphWitness>& ws, const sc::WeightSemigroup& omega) {
  auto join = [](const auto& xs) {
    std::string s;
    for (auto x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s.empty() ? std::string("-") : s;
  };
  for (const auto& w : ws)
    std::cout << "witness vertices=" << join(w.vertices) << " edges=" << join(w.edges)
              << " weight=" << omega.name(w.weight) << '\n';
}

nlohmann::json witnessJson(const std::vector<sc::SubgraphWitness>& ws) {
  auto out = nlohmann::json::array();
  for (const auto& w : ws) out.push_back({{"vertices", w.vertices}, {"edges", w.edges}, {"weight", w.weight}});
  return out;
}

void writeJson(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw sc::Error("cannot write " + path);
  out << doc.dump(2) << '\n';
}

int runCount(const CountFlags& f) {
  sc::CountQuery q = buildQuery(f);
  sc::CountResult r = sc::countSubgraphs(q);
  const auto& omega = q.omega ? *q.omega : q.graph.graph.semigroup();
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << r.count.str() << '\n';
  if (f.maximal && r.maxWeight) std::cout << "max-weight " << omega.name(*r.maxWeight) << '\n';
  if (f.witnesses) printWitnesses(r.witnesses, omega);
  if (f.verbose) {
    std::cout << "c=" << r.c << " q=" << r.q << '\n';
    for (const auto& s : r.stats)
      std::cout << "stage " << s.name << " vertices=" << s.vertices << " edges=" << s.edges << " ms=" << s.millis << '\n';
  }
  int code = kOk;
  nlohmann::json doc{{"count", r.count.str()}, {"c", r.c}, {"q", r.q}, {"warnings", r.warnings}};
  if (r.maxWeight) doc["maxWeight"] = *r.maxWeight;
  doc["witnesses"] = witnessJson(r.witnesses);
  auto stats = nlohmann::json::array();
  for (const auto& s : r.stats)
    stats.push_back({{"name", s.name}, {"vertices", s.vertices}, {"edges", s.edges}, {"millis", s.millis}});
  doc["stats"] = stats;
  if (f.audit) {
    auto report = sc::auditWitnesses(r, q);
    auto expected = sc::oracleCount(q);
    doc["audit"] = {{"passed", report.passed && expected.count == r.count},
                    {"checked", report.checked},
                    {"oracleCount", expected.count.str()},
                    {"failures", report.failures}};
    for (const auto& failure : report.failures) std::cerr << "audit: " << failure << '\n';
    if (expected.count != r.count)
      std::cerr << "audit: oracle counts " << expected.count.str() << ", pipeline " << r.count.str() << '\n';
    if (!report.passed || expected.count != r.count) code = kAudit;
    else std::cerr << "audit: " << report.checked << " witnesses and the count agree with the oracle\n";
  }
  if (!f.json.empty()) writeJson(f.json, doc);
  return code;
}

int runOracle(const CountFlags& f) {
  sc::CountQuery q = buildQuery(f);
  auto r = sc::oracleCount(q);
  const auto& omega = q.omega ? *q.omega : q.graph.graph.semigroup();
  std::cout << r.count.str() << '\n';
  if (f.maximal && r.maxWeight) std::cout << "max-weight " << omega.name(*r.maxWeight) << '\n';
  if (f.witnesses) printWitnesses(r.witnesses, omega);
  if (!f.json.empty()) {
    nlohmann::json doc{{"count", r.count.str()}, {"witnesses", witnessJson(r.witnesses)}};
    if (r.maxWeight) doc["maxWeight"] = *r.maxWeight;
    writeJson(f.json, doc);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Count subgraphs of ordered digraphs with slice automata"};
  app.require_subcommand(1);
  std::uint64_t seed = sc::kDefaultSeed;
  std::size_t jobs = 1;
  app.add_option("--seed", seed, "seed for generated corpora")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  std::string graphPath, orderingPath, outPath;
  std::optional<std::size_t> budget;
  auto* order = app.add_subcommand("order", "minimum-dvsn ordering and its zig-zag bound");
  order->add_option("graph", graphPath)->required()->check(CLI::ExistingFile);
  order->add_option("--budget", budget, "give up above this dvsn");
  order->add_option("--output", outPath, "write the ordering here");

  std::size_t verifyZ = 1;
  auto* verify = app.add_subcommand("verify", "check that an ordering is z-topological");
  verify->add_option("graph", graphPath)->required()->check(CLI::ExistingFile);
  verify->add_option("ordering", orderingPath)->required()->check(CLI::ExistingFile);
  verify->add_option("--z", verifyZ)->required()->check(CLI::PositiveNumber);

  auto* decompose = app.add_subcommand("decompose", "unit decomposition along an ordering");
  decompose->add_option("graph", graphPath)->required()->check(CLI::ExistingFile);
  decompose->add_option("ordering", orderingPath)->required()->check(CLI::ExistingFile);

  std::string formulaArg;
  std::size_t compileK = 1, compileZ = 1;
  bool compileStats = false;
  auto* compile = app.add_subcommand("compile", "slice graph of formula, Unitable(k) and ZigZag(z)");
  compile->add_option("formula", formulaArg, "formula file or inline formula")->required();
  compile->add_option("--k", compileK)->check(CLI::PositiveNumber);
  compile->add_option("--z", compileZ)->check(CLI::PositiveNumber);
  compile->add_option("--graph", graphPath, "restrict the alphabet to this host graph")->check(CLI::ExistingFile);
  compile->add_option("--ordering", orderingPath, "host ordering (with --graph)")->check(CLI::ExistingFile);
  compile->add_flag("--stats", compileStats, "print sizes instead of the slice graph");

  CountFlags countFlags;
  auto* count = app.add_subcommand("count", "count subgraphs with the slice-graph pipeline");
  addCountFlags(count, countFlags);
  count->add_flag("--staged", countFlags.staged, "build every intermediate slice graph");
  count->add_flag("--audit", countFlags.audit, "re-check witnesses and the count with the oracle");
  count->add_flag("--dsl-macros", countFlags.dslMacros, "compile macros from their formula text");

  CountFlags oracleFlags;
  auto* oracle = app.add_subcommand("oracle", "count subgraphs by brute force");
  addCountFlags(oracle, oracleFlags);

  std::size_t benchSize = 120;
  auto* bench = app.add_subcommand("bench", "pipeline vs oracle on the bundled corpus");
  bench->add_option("--size", benchSize, "corpus size")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*order) {
      sc::Digraph g = sc::loadDigraph(graphPath);
      auto r = sc::searchMinDvsnOrdering(g, budget);
      if (!r.ordering) {
        std::cerr << "dvsn exceeds the budget " << r.value << '\n';
        return kResource;
      }
      std::cout << "ordering " << sc::formatOrdering(*r.ordering) << '\n';
      std::cout << "dvsn " << r.value << '\n';
      std::cout << "bound z <= " << 2 * r.value + 1 << '\n';
      if (!outPath.empty()) {
        std::ofstream out(outPath);
        out << sc::formatOrdering(*r.ordering) << '\n';
      }
      return kOk;
    }
    if (*verify) {
      sc::Digraph g = sc::loadDigraph(graphPath);
      sc::Ordering o = sc::loadOrdering(orderingPath);
      sc::requirePermutation(g, o);
      auto v = sc::verifyZigZag(g, o, verifyZ);
      if (v.verified) {
        std::cout << "verified\n";
        return kOk;
      }
      std::cout << "violated at cut " << v.cut << " by path";
      for (auto x : v.pathVertices) std::cout << ' ' << x;
      std::cout << '\n';
      return kFailure;
    }
    if (*decompose) {
      sc::Digraph g = sc::loadDigraph(graphPath);
      sc::Ordering o = sc::loadOrdering(orderingPath);
      std::cout << sc::serializeDecomposition(sc::decomposeAlongOrdering(g, o));
      return kOk;
    }
    if (*compile) {
      auto phi = std::filesystem::exists(formulaArg) ? sc::loadFormula(formulaArg) : sc::parseFormula(formulaArg);
      auto alphabet = std::make_shared<sc::SliceAlphabet>();
      const std::size_t c = compileK * compileZ;
      if (!graphPath.empty()) {
        if (orderingPath.empty()) throw sc::InvalidArgument("--graph needs --ordering");
        sc::Digraph g = sc::loadDigraph(graphPath);
        auto u = sc::decomposeAlongOrdering(g, sc::loadOrdering(orderingPath));
        auto sub = sc::buildSubSliceGraph(u, c);
        for (std::uint32_t id = 0; id < sub.labelCount(); ++id) alphabet->intern(sub.labelSlice(id));
      } else {
        std::vector<std::string> vl{sc::kDefaultLabel}, el{sc::kDefaultLabel};
        for (const auto& a : sc::mentionedVertexLabels(phi)) vl.push_back(a);
        for (const auto& b : sc::mentionedEdgeLabels(phi)) el.push_back(b);
        for (const auto& s : sc::enumerateUnitSymbols(c, vl, el)) alphabet->intern(s);
      }
      sc::CompileOptions options;
      options.sliceStateCap = envCap("SLICECOUNT_STATE_CAP", options.sliceStateCap);
      auto sg = sc::buildSaturatedSliceGraph(phi, compileK, compileZ, alphabet, options);
      if (compileStats)
        std::cout << "symbols " << alphabet->size() << "\nvertices " << sg.vertexCount() << "\nedges "
                  << sg.edgeCount() << "\nlabels " << sg.labelCount() << '\n';
      else
        std::cout << sc::serializeSliceGraph(sg);
      return kOk;
    }
    if (*count) return runCount(countFlags);
    if (*oracle) return runOracle(oracleFlags);
    if (*bench) {
      auto rows = sc::runBench(sc::bundledCorpus(seed, benchSize), jobs);
      std::cout << sc::formatBenchTable(rows);
      bool ok = std::all_of(rows.begin(), rows.end(), [](const sc::BenchRow& r) { return r.match; });
      return ok ? kOk : kAudit;
    }
  } catch (const sc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const sc::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const sc::AuditError& e) {
    std::cerr << "audit failure: " << e.what() << '\n';
    return kAudit;
  } catch (const sc::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
