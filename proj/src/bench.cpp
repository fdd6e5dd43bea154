#include "plci/bench.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "plci/dsep.hpp"
#include "plci/grounding.hpp"
#include "plci/oracle.hpp"
#include "plci/parser.hpp"

namespace plci {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::set<std::pair<int, int>> gen_random_dag(int S, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // edge iff next 53-bit draw / 2^53 < S^(-1/2)
  const std::uint64_t threshold =
      static_cast<std::uint64_t>(9007199254740992.0 / std::sqrt(static_cast<double>(S)));
  std::set<std::pair<int, int>> edges;
  for (int i = 1; i <= S; ++i)
    for (int j = i + 1; j <= S; ++j)
      if ((rng() >> 11) < threshold) edges.emplace(i, j);
  return edges;
}

std::pair<ProgramStructure, ExternalDatabase> bench_program(
    int S, const std::set<std::pair<int, int>>& edges) {
  std::string prog_text =
      "random p/1.\n"
      "0.5 :: p(X) :- n(X).\n"
      "0.5 :: p(Y) :- p(X), n(X), n(Y), e(X,Y).\n";
  ProgramStructure prog = parse_program(prog_text);
  std::ostringstream db;
  for (int i = 1; i <= S; ++i) db << "n(" << i << ").\n";
  for (const auto& [i, j] : edges) db << "e(" << i << ", " << j << ").\n";
  ExternalDatabase database = parse_database(db.str(), prog);
  return {std::move(prog), std::move(database)};
}

std::vector<std::pair<int, int>> bench_query_pairs(int S, std::uint64_t seed,
                                                   int count) {
  std::vector<int> evens;
  for (int i = 2; i <= S; i += 2) evens.push_back(i);
  std::vector<std::pair<int, int>> pool;
  for (int a : evens)
    for (int b : evens)
      if (a != b) pool.emplace_back(a, b);
  if (pool.empty()) return {};

  std::mt19937_64 rng(seed);
  auto shuffle_pool = [&] {
    // Fisher-Yates with explicit draws so the sequence is pinned down.
    for (size_t i = pool.size(); i > 1; --i)
      std::swap(pool[i - 1], pool[rng() % i]);
  };
  std::vector<std::pair<int, int>> out;
  while (static_cast<int>(out.size()) < count) {
    shuffle_pool();
    for (const auto& p : pool) {
      if (static_cast<int>(out.size()) == count) break;
      out.push_back(p);
    }
  }
  return out;
}

std::vector<int> regime2_observations(int S) {
  std::vector<int> odd;
  for (int i = 1; i <= S; i += 2) odd.push_back(i);
  return odd;
}

namespace {

long elapsed_us(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

BenchResult run_bench(const BenchConfig& cfg) {
  BenchResult result;
  result.metadata = {
      {"seed", std::to_string(cfg.seed)},
      {"graphs_per_size", std::to_string(cfg.graphs_per_size)},
      {"queries_per_size", std::to_string(cfg.queries_per_size)},
      {"timeout_ms", std::to_string(cfg.timeout.count())},
      {"guard", std::to_string(cfg.guard)},
      {"pair_sampling",
       "uniform without replacement from ordered even pairs, shared across "
       "the graphs of a size; pool reshuffled and reused when smaller than "
       "the requested count"},
      {"edge_distribution", "each i<j independently with probability S^-0.5"},
  };

  for (int S : cfg.sizes) {
    std::vector<std::pair<int, int>> pairs =
        bench_query_pairs(S, mix_seed(cfg.seed ^ (static_cast<std::uint64_t>(S) << 20)),
                          cfg.queries_per_size);
    for (int g = 0; g < cfg.graphs_per_size; ++g) {
      std::uint64_t gseed = mix_seed(mix_seed(cfg.seed ^ static_cast<std::uint64_t>(S)) +
                                     static_cast<std::uint64_t>(g));
      auto [prog, db] = bench_program(S, gen_random_dag(S, gseed));
      ParameterAssignment params = resolve_parameters(prog);
      Grounding grounding = ground(prog, db, params);

      auto node_of = [&](int i) {
        return *grounding.graph.find(GroundAtom{"p", {std::to_string(i)}});
      };
      std::vector<NodeId> odd_obs;
      for (int i : regime2_observations(S)) odd_obs.push_back(node_of(i));

      for (int regime = 1; regime <= 2; ++regime) {
        const std::vector<NodeId>& obs =
            regime == 1 ? std::vector<NodeId>{} : odd_obs;
        ObservationContext ctx = make_observation_context(grounding.graph, obs);

        for (size_t qi = 0; qi < pairs.size(); ++qi) {
          auto [a, b] = pairs[qi];
          if (cfg.mode != BenchMode::Oracle) {
            BenchRecord rec{S, g, static_cast<int>(qi), a, b, regime, "dsep",
                            "", 0, false};
            auto t0 = std::chrono::steady_clock::now();
            try {
              Deadline dl = Deadline::after(cfg.timeout);
              DSepVerdict v =
                  d_connected(grounding.graph, node_of(a), node_of(b), ctx, dl);
              rec.verdict = v.separated ? "separated" : "connected";
            } catch (const TimeoutError&) {
              rec.verdict = "timeout";
              rec.timed_out = true;
            }
            rec.micros = elapsed_us(t0);
            result.records.push_back(std::move(rec));
          }
          if (cfg.mode != BenchMode::Dsep) {
            BenchRecord rec{S, g, static_cast<int>(qi), a, b, regime, "oracle",
                            "", 0, false};
            auto t0 = std::chrono::steady_clock::now();
            try {
              OracleLimits limits;
              limits.guard = cfg.guard;
              limits.deadline = Deadline::after(cfg.timeout);
              CIVerdict v =
                  ci_check(grounding.eqs, node_of(a), node_of(b), obs, limits);
              rec.verdict = v.independent ? "independent" : "dependent";
            } catch (const GuardExceededError&) {
              rec.verdict = "guard_exceeded";
            } catch (const TimeoutError&) {
              rec.verdict = "timeout";
              rec.timed_out = true;
            }
            rec.micros = elapsed_us(t0);
            result.records.push_back(std::move(rec));
          }
        }
      }
    }
  }

  std::stable_sort(result.records.begin(), result.records.end(),
                   [](const BenchRecord& x, const BenchRecord& y) {
                     return std::tie(x.size, x.graph, x.query, x.regime, x.mode) <
                            std::tie(y.size, y.graph, y.query, y.regime, y.mode);
                   });

  // Per-(size, mode, regime) summaries.
  std::map<std::tuple<int, std::string, int>, std::vector<const BenchRecord*>>
      groups;
  for (const BenchRecord& r : result.records)
    groups[{r.size, r.mode, r.regime}].push_back(&r);
  for (auto& [key, recs] : groups) {
    std::vector<long> times;
    int timeouts = 0;
    for (const BenchRecord* r : recs) {
      times.push_back(r->micros);
      if (r->timed_out) ++timeouts;
    }
    std::sort(times.begin(), times.end());
    BenchSummary s;
    std::tie(s.size, s.mode, s.regime) = key;
    s.median_us = times[(times.size() - 1) / 2];  // lower median
    s.max_us = times.back();
    s.timeouts = timeouts;
    result.summaries.push_back(std::move(s));
  }
  std::sort(result.summaries.begin(), result.summaries.end(),
            [](const BenchSummary& x, const BenchSummary& y) {
              return std::tie(x.size, x.mode, x.regime) <
                     std::tie(y.size, y.mode, y.regime);
            });
  return result;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string records_csv(const BenchResult& result) {
  std::ostringstream os;
  os << "S,graph,a,b,regime,mode,verdict,micros,timeout\n";
  for (const BenchRecord& r : result.records)
    os << r.size << ',' << r.graph << ',' << r.a << ',' << r.b << ','
       << r.regime << ',' << csv_field(r.mode) << ',' << csv_field(r.verdict)
       << ',' << r.micros << ',' << (r.timed_out ? 1 : 0) << '\n';
  return os.str();
}

std::string summaries_csv(const BenchResult& result) {
  std::ostringstream os;
  os << "S,mode,regime,median_us,max_us,timeouts\n";
  for (const BenchSummary& s : result.summaries)
    os << s.size << ',' << csv_field(s.mode) << ',' << s.regime << ','
       << s.median_us << ',' << s.max_us << ',' << s.timeouts << '\n';
  return os.str();
}

}  // namespace plci
