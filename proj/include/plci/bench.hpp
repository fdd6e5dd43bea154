// Benchmark harness: seeded random DAG generation, the chained p/1
// program over them, and timing of d-separation queries against the
// brute-force independence check.
#pragma once

#include <chrono>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plci/ast.hpp"

namespace plci {

enum class BenchMode { Dsep, Oracle, Both };

struct BenchConfig {
  std::vector<int> sizes;
  int graphs_per_size = 5;
  int queries_per_size = 10;
  std::uint64_t seed = 0;
  std::chrono::milliseconds timeout{10000};
  BenchMode mode = BenchMode::Dsep;
  int guard = 22;
};

struct BenchRecord {
  int size;
  int graph;        // 0-based graph index within the size
  int query;        // 0-based pair index within the size
  int a, b;
  int regime;       // 1: no observations, 2: all odd p(i) observed
  std::string mode;     // "dsep" or "oracle"
  std::string verdict;  // separated|connected|independent|dependent|
                        // guard_exceeded|timeout
  long micros = 0;
  bool timed_out = false;
};

struct BenchSummary {
  int size;
  std::string mode;
  int regime;
  long median_us = 0;
  long max_us = 0;
  int timeouts = 0;
};

struct BenchResult {
  std::vector<BenchRecord> records;      // sorted (S, graph, query, regime, mode)
  std::vector<BenchSummary> summaries;   // sorted (S, mode, regime)
  std::vector<std::pair<std::string, std::string>> metadata;
};

// splitmix64; used to derive independent per-(size, graph) streams from the
// master seed. The full generation procedure is spelled out in the README.
std::uint64_t mix_seed(std::uint64_t x);

// Random DAG on nodes 1..S: each pair i < j receives the edge i -> j
// independently with probability S^(-1/2). A draw takes the next 53 bits
// of a mt19937_64 stream; pairs are visited in lexicographic order.
std::set<std::pair<int, int>> gen_random_dag(int S, std::uint64_t seed);

// The two-clause chained program over the DAG's node/edge facts. The
// ground graph is exactly {p(i) -> p(j) : e(i, j)}.
std::pair<ProgramStructure, ExternalDatabase> bench_program(
    int S, const std::set<std::pair<int, int>>& edges);

// Ten (a, b) pairs of distinct even numbers in [2, S], uniform without
// replacement, shared by all graphs of the size; when fewer distinct
// ordered pairs exist the pool is reshuffled and reused.
std::vector<std::pair<int, int>> bench_query_pairs(int S, std::uint64_t seed,
                                                   int count);

// Node indexes observed in the second query regime: every odd i in [1, S].
std::vector<int> regime2_observations(int S);

BenchResult run_bench(const BenchConfig& cfg);

// RFC-4180 CSV: records table, and the per-size summary table.
std::string records_csv(const BenchResult& result);
std::string summaries_csv(const BenchResult& result);

}  // namespace plci
