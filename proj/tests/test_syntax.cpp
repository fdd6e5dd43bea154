#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "plci/parser.hpp"

using namespace plci;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const std::string kStoragePlp = std::string(PLCI_DATA_DIR) + "/storage.plp";
const std::string kStorageDb = std::string(PLCI_DATA_DIR) + "/storage.db";

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(*parse_rational("0.05") == BigRat(1, 20));
  CHECK(*parse_rational("0.8") == BigRat(4, 5));
  CHECK(*parse_rational("1") == BigRat(1));
  CHECK(*parse_rational("0") == BigRat(0));
  CHECK(*parse_rational("3/4") == BigRat(3, 4));
  CHECK(!parse_rational(""));
  CHECK(!parse_rational("."));
  CHECK(!parse_rational("1."));
  CHECK(!parse_rational("a"));
  CHECK(rat_to_decimal(BigRat(1, 20)) == "0.05");
  CHECK(rat_to_decimal(BigRat(4, 5)) == "0.8");
  CHECK(rat_to_decimal(BigRat(1)) == "1");
  CHECK(rat_to_decimal(BigRat(1, 3)) == "1/3");
  CHECK(rat_to_fraction(BigRat(96, 625)) == "96/625");
  CHECK(rat_approx(BigRat(96, 625)) == "0.1536");
}

TEST_CASE("storage program parses with the expected shape") {
  ProgramStructure p = parse_program(read_file(kStoragePlp));
  CHECK(p.random_part.size() == 4);
  CHECK(p.internal_part.size() == 2);
  CHECK(p.constraints.size() == 1);
  CHECK(p.decls.random.size() == 4);
  CHECK(p.decls.internal.size() == 1);
  CHECK(p.decls.internal.count("connected") == 1);
  // implicit externals: room, employee, tank, liquid, passage, in, stores, flammable
  CHECK(p.decls.external.size() == 8);
  CHECK(p.decls.external.at("passage") == 2);

  CHECK(p.random_part[0].clause_id == 1);
  CHECK(p.random_part[3].clause_id == 4);
  CHECK(*p.random_part[0].probability == BigRat(4, 5));
  CHECK(*p.random_part[3].probability == BigRat(1, 20));
  CHECK(p.random_part[1].causes.size() == 1);  // leaks <- opens
  CHECK(p.random_part[3].causes.size() == 2);  // fire <- smokes, leaks
}

TEST_CASE("empty program") {
  ProgramStructure p = parse_program("");
  CHECK(p.random_part.empty());
  CHECK(p.internal_part.empty());
  CHECK(p.constraints.empty());
  CHECK(p.decls.random.empty());
}

TEST_CASE("undeclared random predicate is rejected") {
  CHECK_THROWS_WITH_AS(parse_program("0.5 :: p(X) :- q(X)."),
                       doctest::Contains("undeclared random predicate"),
                       ValidationError);
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(parse_program("random p/1.\n0.5 :: p(X) :- e(X), e(X,Y)."),
                  ValidationError);  // arity clash on e
  CHECK_THROWS_WITH_AS(parse_program("random p/1.\n0.5 :: p(X)."),
                       doctest::Contains("range-restriction"), ValidationError);
  CHECK_THROWS_WITH_AS(
      parse_program("random p/0.\nrandom q/0.\n0.5 :: q.\nfoo :- q."),
      doctest::Contains("random atom"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_program("random p/1.\np(X) :- e(X)."),
                       doctest::Contains("head of an internal clause"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(
      parse_program("random p/0.\n0.5 :: p :- p, p."),
      doctest::Contains("duplicate cause"), ValidationError);
  CHECK_THROWS_AS(parse_program("random p/0.\n1.5 :: p."), ParseError);
  // a random atom buried in a disjunction of a condition
  CHECK_THROWS_WITH_AS(
      parse_program("random p/0.\nrandom q/0.\n0.5 :: q.\n"
                    "0.5 :: p :- (e; q)."),
      doctest::Contains("random atom inside a condition"), ParseError);
}

TEST_CASE("unspecified probability and parameter resolution") {
  ProgramStructure p = parse_program(
      "random p/1.\nrandom q/1.\n_ :: p(X) :- e(X).\n0.25 :: q(X) :- e(X).");
  CHECK(!p.random_part[0].probability);
  CHECK(*p.random_part[1].probability == BigRat(1, 4));

  ParameterAssignment none = resolve_parameters(p);
  CHECK(none.probs.count(1) == 0);
  CHECK(none.probs.at(2) == BigRat(1, 4));

  ParamsFile file = parse_params("default = 0.75\n");
  ParameterAssignment with_default = resolve_parameters(p, file);
  CHECK(with_default.probs.at(1) == BigRat(3, 4));
  CHECK(with_default.probs.at(2) == BigRat(1, 4));  // default fills only `_`

  ParamsFile overriding = parse_params("% overrides\n2 = 0.9\n1=0.1");
  ParameterAssignment merged = resolve_parameters(p, overriding);
  CHECK(merged.probs.at(1) == BigRat(1, 10));
  CHECK(merged.probs.at(2) == BigRat(9, 10));  // explicit entry wins

  CHECK_THROWS_AS(resolve_parameters(p, parse_params("7 = 0.5")),
                  ValidationError);
  CHECK_THROWS_AS(parse_params("1 = 1.5"), ParseError);
  CHECK_THROWS_AS(parse_params("x = 0.5"), ParseError);
}

TEST_CASE("database parsing") {
  ProgramStructure p = parse_program(read_file(kStoragePlp));
  ExternalDatabase db = parse_database(read_file(kStorageDb), p);
  int employees = 0, passages = 0;
  for (const Atom& f : db.facts) {
    if (f.predicate == "employee") ++employees;
    if (f.predicate == "passage") ++passages;
  }
  CHECK(employees == 2);
  CHECK(passages == 2);
  CHECK(db.constants.count("t5") == 1);
  CHECK(db.constants.count("gasoline") == 1);

  ExternalDatabase empty = parse_database("", p);
  CHECK(empty.facts.empty());

  CHECK_THROWS_WITH_AS(parse_database("passage(r1, X).", p),
                       doctest::Contains("non-ground fact"), ParseError);
  CHECK_THROWS_WITH_AS(parse_database("opens(john, t1).", p),
                       doctest::Contains("not declared external"), ParseError);
  CHECK_THROWS_WITH_AS(parse_database("connected(r1, r2).", p),
                       doctest::Contains("not declared external"), ParseError);
  CHECK_THROWS_AS(parse_database("passage(r1).", p), ValidationError);

  // duplicates collapse
  ExternalDatabase dup = parse_database("room(r9). room(r9).", p);
  CHECK(dup.facts.size() == 1);
}

TEST_CASE("query parsing") {
  ProgramStructure p = parse_program(read_file(kStoragePlp));
  CIQuery q = parse_query(
      "indep(smokes(john,r1), opens(mary,t2), [fire(r1)])", p);
  CHECK(q.observations.size() == 1);
  CHECK(to_string(q.a) == "smokes(john, r1)");

  CIQuery q2 = parse_query("indep(fire(r1), fire(r2), [])", p);
  CHECK(q2.observations.empty());

  CHECK_THROWS_WITH_AS(parse_query("indep(smokes(X,r1), fire(r2), [])", p),
                       doctest::Contains("non-ground"), ParseError);
  CHECK_THROWS_WITH_AS(parse_query("indep(frob(r1), fire(r2), [])", p),
                       doctest::Contains("unknown predicate"), ParseError);
  CHECK_THROWS_WITH_AS(parse_query("indep(room(r1), fire(r2), [])", p),
                       doctest::Contains("not random"), ParseError);
  CHECK_THROWS_AS(parse_query("indep(fire(r1), fire(r2), []) junk", p),
                  ParseError);
}

TEST_CASE("pretty-print round trip is a fixpoint") {
  for (const char* file : {"/storage.plp", "/sprinkler.plp", "/xor.plp"}) {
    std::string text = read_file(std::string(PLCI_DATA_DIR) + file);
    ProgramStructure once = parse_program(text);
    std::string printed = pretty_print(once);
    ProgramStructure twice = parse_program(printed);
    CHECK(pretty_print(twice) == printed);
    CHECK(twice.random_part.size() == once.random_part.size());
    CHECK(twice.internal_part.size() == once.internal_part.size());
    CHECK(twice.constraints.size() == once.constraints.size());
  }
  // disjunction, negation, builtins, unspecified probability
  std::string tricky =
      "random p/2.\n"
      "_ :: p(X, Y) :- e(X, Y), (f(X); g(Y), \\+h(X)), X \\= Y.\n";
  std::string printed = pretty_print(parse_program(tricky));
  CHECK(pretty_print(parse_program(printed)) == printed);
}

TEST_CASE("parsing is deterministic") {
  std::string text = read_file(kStoragePlp);
  ProgramStructure a = parse_program(text);
  ProgramStructure b = parse_program(text);
  CHECK(pretty_print(a) == pretty_print(b));
  for (size_t i = 0; i < a.random_part.size(); ++i)
    CHECK(a.random_part[i].clause_id == b.random_part[i].clause_id);
}

TEST_CASE("vocabulary invariants on accepted programs") {
  ProgramStructure p = parse_program(read_file(kStoragePlp));
  for (const RandomClause& rc : p.random_part)
    CHECK(p.decls.random.count(rc.effect.predicate) == 1);
  // the three vocabularies are pairwise disjoint
  for (const auto& [pred, _] : p.decls.random) {
    CHECK(p.decls.external.count(pred) == 0);
    CHECK(p.decls.internal.count(pred) == 0);
  }
  for (const auto& [pred, _] : p.decls.internal)
    CHECK(p.decls.external.count(pred) == 0);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_program("random p/0.\n0.5 : p.");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("comments and CRLF input") {
  ProgramStructure p =
      parse_program("% comment\r\nrandom p/0.\r\n0.5 :: p. % trailing\r\n");
  CHECK(p.random_part.size() == 1);
}
