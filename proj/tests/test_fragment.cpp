#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "plci/fragment.hpp"
#include "plci/parser.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

using namespace plci;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Loaded {
  ProgramStructure program;
  ExternalDatabase db;
  ParameterAssignment params;
  Grounding grounding;
};

Loaded load(const std::string& prog_text, const std::string& db_text) {
  Loaded l;
  l.program = parse_program(prog_text);
  l.db = parse_database(db_text, l.program);
  l.params = resolve_parameters(l.program);
  l.grounding = ground(l.program, l.db, l.params);
  return l;
}

Loaded load_storage() {
  return load(read_file(std::string(PLCI_DATA_DIR) + "/storage.plp"),
              read_file(std::string(PLCI_DATA_DIR) + "/storage.db"));
}

bool cycle_is_valid(const GroundGraph& g, const std::vector<NodeId>& cycle) {
  if (cycle.size() < 4) return false;  // at least 3 distinct nodes
  if (cycle.front() != cycle.back()) return false;
  std::set<NodeId> interior(cycle.begin(), cycle.end() - 1);
  if (interior.size() != cycle.size() - 1) return false;  // simple
  for (size_t i = 0; i + 1 < cycle.size(); ++i) {
    bool adjacent = g.has_edge(cycle[i], cycle[i + 1]) ||
                    g.has_edge(cycle[i + 1], cycle[i]);
    if (!adjacent) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("positivity of the random part") {
  Loaded storage = load_storage();
  CHECK(is_positive(storage.program) == std::pair(true, std::optional<int>{}));

  ProgramStructure neg = parse_program(
      "random a/1.\nrandom b/1.\n0.5 :: b(X) :- n(X).\n"
      "0.5 :: a(X) :- n(X), \\+b(X).\n");
  auto [ok, witness] = is_positive(neg);
  CHECK(!ok);
  CHECK(*witness == 2);

  CHECK(is_positive(parse_program("")).first);
}

TEST_CASE("single-connectedness with witnesses") {
  // the chained program on a path graph grounds to a path
  Loaded path = load(
      "random p/1.\n0.5 :: p(X) :- n(X).\n"
      "0.5 :: p(Y) :- p(X), n(X), n(Y), e(X,Y).\n",
      "n(1). n(2). n(3). n(4). e(1, 2). e(2, 3). e(3, 4).");
  auto [path_ok, path_witness] = is_singly_connected(path.grounding.graph);
  CHECK(path_ok);
  CHECK(path_witness.empty());

  Loaded storage = load_storage();
  auto [st_ok, st_witness] = is_singly_connected(storage.grounding.graph);
  CHECK(!st_ok);
  CHECK(cycle_is_valid(storage.grounding.graph, st_witness));

  GroundGraph empty;
  CHECK(is_singly_connected(empty).first);
}

TEST_CASE("single-connectedness agrees with a naive path counter") {
  std::mt19937_64 rng(321);
  for (int round = 0; round < 40; ++round) {
    int n = 2 + static_cast<int>(rng() % 8);
    GroundGraph g = testgen::make_graph(n, testgen::random_dag(n, 0.3, rng));
    bool all_single = true;
    for (int x = 0; x < n && all_single; ++x)
      for (int y = x + 1; y < n && all_single; ++y)
        if (testref::undirected_simple_paths(g, x, y) > 1) all_single = false;
    CHECK(is_singly_connected(g).first == all_single);
  }
}

TEST_CASE("sources grounded by probabilistic facts") {
  Loaded storage = load_storage();
  auto [ok, witness] =
      sources_are_facts(storage.grounding.graph, storage.grounding.eqs);
  CHECK(ok);
  CHECK(!witness.has_value());

  // `a` is only a cause instance: a source with zero disjuncts
  Loaded orphan = load("random a/0.\nrandom b/0.\n0.5 :: b :- a.\n", "");
  auto [ok2, witness2] =
      sources_are_facts(orphan.grounding.graph, orphan.grounding.eqs);
  CHECK(!ok2);
  REQUIRE(witness2.has_value());
  CHECK(orphan.grounding.graph.nodes[*witness2].str() == "a");

  GroundGraph empty;
  EquationSystem no_eqs;
  CHECK(sources_are_facts(empty, no_eqs).first);
}

TEST_CASE("parameters strictly inside the unit interval") {
  Loaded storage = load_storage();
  CHECK(params_interior(storage.program, storage.params).first);

  ProgramStructure one = parse_program("random a/0.\n1 :: a.\n");
  auto [ok1, w1] = params_interior(one, resolve_parameters(one));
  CHECK(!ok1);
  CHECK(*w1 == 1);

  ProgramStructure zero = parse_program("random a/0.\n0 :: a.\n");
  CHECK(!params_interior(zero, resolve_parameters(zero)).first);

  ProgramStructure unspec = parse_program("random a/0.\n_ :: a.\n");
  CHECK(!params_interior(unspec, resolve_parameters(unspec)).first);
}

TEST_CASE("fragment report is the conjunction of the four flags") {
  Loaded storage = load_storage();
  FragmentReport report = fragment_report(storage.program, storage.grounding,
                                          storage.params);
  CHECK(report.positive);
  CHECK(!report.singly_connected);
  CHECK(report.sources_fact_grounded);
  CHECK(report.params_in_interior);
  CHECK(!report.complete_oracle);
  // full storage has 42 error terms, above the default guard
  CHECK(report.properness.status == Properness::Unchecked);
}

TEST_CASE("polytree instances certify and are faithful (Theorem 3 shape)") {
  std::mt19937_64 rng(98765);
  for (int round = 0; round < 10; ++round) {
    testgen::Instance inst = testgen::random_polytree(rng);
    testgen::ParsedInstance p = testgen::parse_instance(inst);
    Grounding g = ground(p.program, p.db, p.params);
    FragmentReport report = fragment_report(p.program, g, p.params);
    REQUIRE(report.complete_oracle);
    REQUIRE(report.properness.status == Properness::Proper);

    SweepReport sweep = faithfulness_sweep(g, {});
    CHECK(sweep.violations.empty());
  }
}

TEST_CASE("xor program fails the fragment and is actually unfaithful") {
  Loaded x = load(read_file(std::string(PLCI_DATA_DIR) + "/xor.plp"), "");
  FragmentReport report = fragment_report(x.program, x.grounding, x.params);
  CHECK(!report.positive);          // negative causes
  CHECK(!report.complete_oracle);
  CHECK(!faithfulness_sweep(x.grounding, {}).violations.empty());
}
