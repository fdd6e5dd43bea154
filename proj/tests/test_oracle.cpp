#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "plci/oracle.hpp"
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

Grounding ground_files(const char* plp, const char* db_name) {
  ProgramStructure p =
      parse_program(read_file(std::string(PLCI_DATA_DIR) + plp));
  ExternalDatabase db =
      parse_database(db_name ? read_file(std::string(PLCI_DATA_DIR) + db_name)
                             : std::string(),
                     p);
  return ground(p, db, resolve_parameters(p));
}

Grounding ground_text(const std::string& prog_text,
                      const std::string& db_text = "") {
  ProgramStructure p = parse_program(prog_text);
  ExternalDatabase db = parse_database(db_text, p);
  return ground(p, db, resolve_parameters(p));
}

int term_index(const EquationSystem& eqs, int clause_id,
               const std::vector<std::pair<std::string, std::string>>& subst) {
  for (size_t i = 0; i < eqs.error_terms.size(); ++i)
    if (eqs.error_terms[i].clause_id == clause_id &&
        eqs.error_terms[i].subst == subst)
      return static_cast<int>(i);
  FAIL("error term not found");
  return -1;
}

// chain a := u1; b := a & u2 with p = 1/2
const char* kChain =
    "random a/0.\nrandom b/0.\n0.5 :: a.\n0.5 :: b :- a.\n";

}  // namespace

TEST_CASE("solve_valuation: all error terms false means all variables false") {
  Grounding g = ground_files("/storage.plp", "/storage.db");
  ErrorValuation v(g.eqs.error_terms.size(), false);
  std::vector<bool> values = solve_valuation(g.eqs, v);
  for (bool b : values) CHECK(!b);
}

TEST_CASE("solve_valuation: hand evaluation of the storage equations") {
  Grounding g = ground_files("/storage.plp", "/storage.db");
  ErrorValuation v(g.eqs.error_terms.size(), false);
  v[term_index(g.eqs, 1, {{"E", "john"}, {"T", "t1"}})] = true;
  v[term_index(g.eqs, 2, {{"T", "t1"}, {"E", "john"}})] = true;
  std::vector<bool> values = solve_valuation(g.eqs, v);
  CHECK(values[*g.graph.find(GroundAtom{"opens", {"john", "t1"}})]);
  CHECK(values[*g.graph.find(GroundAtom{"leaks", {"t1"}})]);
  CHECK(!values[*g.graph.find(GroundAtom{"opens", {"mary", "t1"}})]);
  for (const char* r : {"r1", "r2", "r3", "r4"})
    CHECK(!values[*g.graph.find(GroundAtom{"fire", {r}})]);
}

TEST_CASE("solve_valuation with a negative cause") {
  Grounding g = ground_text(
      "random a/0.\nrandom b/0.\n0.5 :: a.\n0.5 :: b :- \\+a.\n");
  ErrorValuation v(2, false);
  v[term_index(g.eqs, 2, {})] = true;  // u2 only
  std::vector<bool> values = solve_valuation(g.eqs, v);
  CHECK(!values[*g.graph.find(GroundAtom{"a", {}})]);
  CHECK(values[*g.graph.find(GroundAtom{"b", {}})]);
}

TEST_CASE("joint: single probabilistic fact") {
  Grounding g = ground_text("random p/0.\n0.5 :: p.\n");
  NodeId p = *g.graph.find(GroundAtom{"p", {}});
  JointTable t = joint(g.eqs, {p});
  CHECK(t.probs[0] == BigRat(1, 2));
  CHECK(t.probs[1] == BigRat(1, 2));
}

TEST_CASE("joint: restricted storage marginals from the worked example") {
  Grounding both = ground_files("/storage.plp", "/storage_t1r1.db");
  NodeId leaks = *both.graph.find(GroundAtom{"leaks", {"t1"}});
  JointTable t = joint(both.eqs, {leaks});
  CHECK(t.probs[1] == BigRat(96, 625));  // 1 - (1 - 4/5 * 1/10)^2
  CHECK(t.probs[0] + t.probs[1] == BigRat(1));

  Grounding one = ground_files("/storage.plp", "/storage_t1r1_john.db");
  NodeId leaks1 = *one.graph.find(GroundAtom{"leaks", {"t1"}});
  JointTable t1 = joint(one.eqs, {leaks1});
  CHECK(t1.probs[1] == BigRat(2, 25));  // 0.8 * 0.1
}

TEST_CASE("joint: independent facts give a product-form table") {
  Grounding g = ground_text(
      "random a/0.\nrandom b/0.\n0.3 :: a.\n0.7 :: b.\n");
  NodeId a = *g.graph.find(GroundAtom{"a", {}});
  NodeId b = *g.graph.find(GroundAtom{"b", {}});
  JointTable t = joint(g.eqs, {a, b});
  BigRat pa = BigRat(3, 10), pb = BigRat(7, 10);
  CHECK(t.probs[0] == (1 - pa) * (1 - pb));
  CHECK(t.probs[1] == pa * (1 - pb));
  CHECK(t.probs[2] == (1 - pa) * pb);
  CHECK(t.probs[3] == pa * pb);
}

TEST_CASE("guard is enforced and reports the required size") {
  Grounding g = ground_files("/storage.plp", "/storage.db");  // 42 terms
  OracleLimits limits;
  try {
    joint(g.eqs, {0}, limits);
    FAIL("expected GuardExceededError");
  } catch (const GuardExceededError& e) {
    CHECK(e.required == 42);
  }
}

TEST_CASE("ci_check: two independent facts") {
  Grounding g = ground_text(
      "random a/0.\nrandom b/0.\n0.3 :: a.\n0.7 :: b.\n");
  CIVerdict v = ci_check(g.eqs, *g.graph.find(GroundAtom{"a", {}}),
                         *g.graph.find(GroundAtom{"b", {}}), {});
  CHECK(v.independent);
  CHECK(!v.counterexample);
}

TEST_CASE("ci_check: chain is dependent with the documented counterexample") {
  Grounding g = ground_text(kChain);
  NodeId a = *g.graph.find(GroundAtom{"a", {}});
  NodeId b = *g.graph.find(GroundAtom{"b", {}});
  CIVerdict v = ci_check(g.eqs, a, b, {});
  CHECK(!v.independent);
  REQUIRE(v.counterexample.has_value());
  // pi(a=1, b=1) = 1/4 vs pi(a=1) * pi(b=1) = 1/2 * 1/4 = 1/8
  CHECK(v.counterexample->a_value);
  CHECK(v.counterexample->b_value);
  CHECK(v.counterexample->lhs == BigRat(1, 4));
  CHECK(v.counterexample->rhs == BigRat(1, 8));
}

TEST_CASE("ci_check on the trimmed storage") {
  Grounding g = ground_files("/storage.plp", "/storage_small.db");
  CHECK(g.eqs.error_terms.size() == 20);
  NodeId x = *g.graph.find(GroundAtom{"smokes", {"john", "r1"}});
  NodeId y = *g.graph.find(GroundAtom{"opens", {"mary", "t2"}});
  NodeId fire = *g.graph.find(GroundAtom{"fire", {"r1"}});
  CHECK(ci_check(g.eqs, x, y, {}).independent);
  CHECK(!ci_check(g.eqs, x, y, {fire}).independent);
}

TEST_CASE("observing an endpoint makes the pair trivially independent") {
  Grounding g = ground_text(kChain);
  NodeId a = *g.graph.find(GroundAtom{"a", {}});
  NodeId b = *g.graph.find(GroundAtom{"b", {}});
  CHECK(!ci_check(g.eqs, a, b, {}).independent);
  CHECK(ci_check(g.eqs, a, b, {a}).independent);  // matches d-separation
  CHECK(ci_check(g.eqs, a, b, {b, b}).independent);  // duplicates collapse
}

TEST_CASE("zero-probability observation contexts are skipped and counted") {
  Grounding g = ground_text(
      "random z/0.\nrandom a/0.\nrandom b/0.\n1 :: z.\n0.5 :: a.\n0.5 :: b.\n");
  NodeId a = *g.graph.find(GroundAtom{"a", {}});
  NodeId b = *g.graph.find(GroundAtom{"b", {}});
  NodeId z = *g.graph.find(GroundAtom{"z", {}});
  CIVerdict v = ci_check(g.eqs, a, b, {z});
  CHECK(v.independent);
  CHECK(v.skipped_contexts == 1);  // z = false has probability zero
}

TEST_CASE("joint tables normalize exactly and deterministically") {
  std::mt19937_64 rng(12321);
  for (int round = 0; round < 10; ++round) {
    testgen::Instance inst = round % 2 == 0
                                 ? testgen::random_propositional(rng, true)
                                 : testgen::random_first_order(rng, true);
    testgen::ParsedInstance p = testgen::parse_instance(inst);
    Grounding g = ground(p.program, p.db, p.params);
    std::vector<NodeId> all;
    for (size_t i = 0; i < g.graph.nodes.size(); ++i)
      all.push_back(static_cast<NodeId>(i));
    JointTable t1 = joint(g.eqs, all);
    BigRat sum = 0;
    for (const BigRat& q : t1.probs) {
      CHECK(q >= 0);
      sum += q;
    }
    CHECK(sum == BigRat(1));
    JointTable t2 = joint(g.eqs, all);
    CHECK(t1.probs == t2.probs);
  }
}

TEST_CASE("agreement with the unfolded-formula evaluation path") {
  std::mt19937_64 rng(777777);
  for (int round = 0; round < 10; ++round) {
    testgen::Instance inst = round % 2 == 0
                                 ? testgen::random_propositional(rng, true)
                                 : testgen::random_first_order(rng, true);
    testgen::ParsedInstance p = testgen::parse_instance(inst);
    Grounding g = ground(p.program, p.db, p.params);
    if (g.graph.nodes.size() > 14) continue;
    std::vector<NodeId> all;
    for (size_t i = 0; i < g.graph.nodes.size(); ++i)
      all.push_back(static_cast<NodeId>(i));
    RawTable direct = raw_joint(g.eqs, all);
    RawTable unfolded = testref::unfolded_joint(g.eqs);
    CHECK(direct.den == unfolded.den);
    CHECK(direct.num == unfolded.num);
  }
}

TEST_CASE("per-query oracle agrees with the precomputed-table path") {
  std::mt19937_64 rng(424242);
  for (int round = 0; round < 8; ++round) {
    testgen::Instance inst = round % 2 == 0
                                 ? testgen::random_propositional(rng, true)
                                 : testgen::random_first_order(rng, true);
    testgen::ParsedInstance p = testgen::parse_instance(inst);
    Grounding g = ground(p.program, p.db, p.params);
    size_t n = g.graph.nodes.size();
    if (n < 3) continue;
    std::vector<NodeId> all;
    for (size_t i = 0; i < n; ++i) all.push_back(static_cast<NodeId>(i));
    RawTable table = raw_joint(g.eqs, all);
    for (int trial = 0; trial < 15; ++trial) {
      NodeId a = static_cast<NodeId>(rng() % n);
      NodeId b = static_cast<NodeId>(rng() % n);
      if (a == b) continue;
      std::vector<NodeId> z;
      for (size_t v = 0; v < n; ++v)
        if (static_cast<NodeId>(v) != a && static_cast<NodeId>(v) != b &&
            rng() % 3 == 0)
          z.push_back(static_cast<NodeId>(v));
      CIVerdict direct = ci_check(g.eqs, a, b, z);
      CIVerdict from_table = ci_from_table(table, a, b, z);
      CHECK(direct.independent == from_table.independent);
      CHECK(direct.skipped_contexts == from_table.skipped_contexts);
    }
  }
}

TEST_CASE("Markov property: variables are independent of non-descendants "
          "given parents") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 8; ++round) {
    testgen::Instance inst = round % 2 == 0
                                 ? testgen::random_propositional(rng, true)
                                 : testgen::random_first_order(rng, true);
    testgen::ParsedInstance p = testgen::parse_instance(inst);
    Grounding g = ground(p.program, p.db, p.params);
    CHECK(markov_violations(g.eqs, g.graph).empty());
  }
}

TEST_CASE("weak transitivity on generated distributions") {
  std::mt19937_64 rng(515151);
  int informative = 0;
  for (int round = 0; round < 12; ++round) {
    testgen::Instance inst = testgen::random_propositional(rng, false);
    testgen::ParsedInstance p = testgen::parse_instance(inst);
    Grounding g = ground(p.program, p.db, p.params);
    size_t n = g.graph.nodes.size();
    if (n < 3) continue;
    std::vector<NodeId> all;
    for (size_t i = 0; i < n; ++i) all.push_back(static_cast<NodeId>(i));
    RawTable table = raw_joint(g.eqs, all);
    for (int trial = 0; trial < 10; ++trial) {
      NodeId a = static_cast<NodeId>(rng() % n);
      NodeId b = static_cast<NodeId>(rng() % n);
      NodeId c = static_cast<NodeId>(rng() % n);
      if (a == b || b == c || a == c) continue;
      bool ab = !ci_from_table(table, a, b, {}).independent;
      bool bc = !ci_from_table(table, b, c, {}).independent;
      if (!ab || !bc) continue;
      ++informative;
      bool ac = !ci_from_table(table, a, c, {}).independent;
      bool ac_given_b = !ci_from_table(table, a, c, {b}).independent;
      CHECK((ac || ac_given_b));
    }
  }
  CHECK(informative > 0);  // the property was actually exercised
}

TEST_CASE("positive correlation along edges") {
  Grounding chain = ground_text(kChain);
  NodeId a = *chain.graph.find(GroundAtom{"a", {}});
  NodeId b = *chain.graph.find(GroundAtom{"b", {}});
  CHECK(positive_correlation_check(chain.eqs, a, b));

  // all edges of the chained program on a 4-node path
  Grounding path = ground_text(
      "random p/1.\n0.5 :: p(X) :- n(X).\n"
      "0.5 :: p(Y) :- p(X), n(X), n(Y), e(X,Y).\n",
      "n(1). n(2). n(3). n(4). e(1, 2). e(2, 3). e(3, 4).");
  for (const auto& [edge, _] : path.graph.provenance)
    CHECK(positive_correlation_check(path.eqs, edge.first, edge.second));
}

TEST_CASE("soundness sweep: no d-separated triple is dependent") {
  // empty random part: vacuous
  Grounding empty = ground_text("");
  SweepReport vacuous = soundness_sweep(empty);
  CHECK(vacuous.triples == 0);
  CHECK(vacuous.violations.empty());

  // the sprinkler network as a program
  ProgramStructure p =
      parse_program(read_file(std::string(PLCI_DATA_DIR) + "/sprinkler.plp"));
  ExternalDatabase db = parse_database("", p);
  SweepReport sprinkler = soundness_sweep(p, db, resolve_parameters(p));
  CHECK(sprinkler.separated > 0);
  CHECK(sprinkler.violations.empty());

  // random programs, negative causes included
  std::mt19937_64 rng(600613);
  for (int round = 0; round < 6; ++round) {
    testgen::Instance inst = round % 2 == 0
                                 ? testgen::random_propositional(rng, true)
                                 : testgen::random_first_order(rng, true);
    testgen::ParsedInstance pi = testgen::parse_instance(inst);
    SweepReport r = soundness_sweep(pi.program, pi.db, pi.params);
    CHECK(r.violations.empty());
  }
}

TEST_CASE("faithfulness sweep: chain program is faithful, xor is not") {
  Grounding path = ground_text(
      "random p/1.\n0.5 :: p(X) :- n(X).\n"
      "0.5 :: p(Y) :- p(X), n(X), n(Y), e(X,Y).\n",
      "n(1). n(2). n(3). e(1, 2). e(2, 3).");
  SweepReport faithful = faithfulness_sweep(path, {});
  CHECK(faithful.violations.empty());

  ProgramStructure x =
      parse_program(read_file(std::string(PLCI_DATA_DIR) + "/xor.plp"));
  ExternalDatabase xdb = parse_database("", x);
  SweepReport unfaithful = faithfulness_sweep(x, xdb, resolve_parameters(x));
  REQUIRE(!unfaithful.violations.empty());
  bool a_c = false;
  Grounding gx = ground(x, xdb, resolve_parameters(x));
  for (const SweepViolation& v : unfaithful.violations) {
    std::set<std::string> pair{gx.graph.nodes[v.a].str(),
                               gx.graph.nodes[v.b].str()};
    if (pair == std::set<std::string>{"a", "c"} && v.z.empty()) a_c = true;
  }
  CHECK(a_c);  // a and c are d-connected yet marginally independent

  Grounding none = ground_text("");
  CHECK(faithfulness_sweep(none, {}).violations.empty());
}
