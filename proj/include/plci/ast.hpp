// Syntax-level data model: terms, atoms, clauses, program structures,
// external databases, parameter assignments and independence queries.
// All values are immutable once built and safe to share across threads.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "plci/rational.hpp"

namespace plci {

enum class TermKind { Constant, Variable };

struct Term {
  TermKind kind;
  std::string name;

  bool is_var() const { return kind == TermKind::Variable; }
  auto operator<=>(const Term&) const = default;
};

// Variables begin with an uppercase letter or '_'; everything else
// (lowercase identifiers, numerals) is a constant.
Term make_term(const std::string& name);

enum class Builtin { None, Eq, Neq };

struct Atom {
  std::string predicate;
  std::vector<Term> args;
  Builtin builtin = Builtin::None;

  bool is_builtin() const { return builtin != Builtin::None; }
  bool ground() const;
  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  Atom atom;
  bool positive = true;
  auto operator<=>(const Literal&) const = default;
};

// Condition of a random clause: a positive boolean combination of
// logical literals. Plain literal sequences are represented as an And.
struct ConditionFormula {
  enum class Kind { Lit, And, Or };
  Kind kind = Kind::And;
  Literal lit;                              // Kind::Lit
  std::vector<ConditionFormula> children;   // Kind::And / Kind::Or

  static ConditionFormula literal(Literal l);
  static ConditionFormula conj(std::vector<ConditionFormula> cs);
  static ConditionFormula disj(std::vector<ConditionFormula> cs);
  bool empty() const { return kind == Kind::And && children.empty(); }
};

struct RandomClause {
  Atom effect;
  std::vector<Literal> causes;          // random literals, source order
  ConditionFormula condition;           // logical part of the body
  std::optional<BigRat> probability;    // nullopt when written as `_`
  int clause_id = 0;                    // 1-based ordinal in file order
};

struct InternalClause {
  Atom head;
  std::vector<Literal> body;
};

struct Constraint {
  std::vector<Literal> body;
};

// The vocabulary chain Omega >= L >= E: random = Omega\L, internal = L\E,
// external = E. The three maps are pairwise disjoint.
struct VocabularyDecl {
  std::map<std::string, int> random;
  std::map<std::string, int> external;
  std::map<std::string, int> internal;

  bool is_random(const std::string& p) const { return random.count(p) > 0; }
  bool is_internal(const std::string& p) const { return internal.count(p) > 0; }
  bool is_external(const std::string& p) const { return external.count(p) > 0; }
  // Arity if declared anywhere, nullopt otherwise.
  std::optional<int> arity_of(const std::string& p) const;
};

struct ProgramStructure {
  VocabularyDecl decls;
  std::vector<RandomClause> random_part;
  std::vector<InternalClause> internal_part;
  std::vector<Constraint> constraints;
};

struct ExternalDatabase {
  std::set<Atom> facts;                // ground atoms over external predicates
  std::set<std::string> constants;     // every constant in program + facts
};

// Total map clause_id -> probability once resolve_parameters() ran.
struct ParameterAssignment {
  std::map<int, BigRat> probs;
};

struct CIQuery {
  Atom a;
  Atom b;
  std::vector<Atom> observations;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- helpers -------------------------------------------------------------

// Variables of an expression in first-occurrence order.
void collect_vars(const Term& t, std::vector<std::string>& out);
void collect_vars(const Atom& a, std::vector<std::string>& out);
void collect_vars(const ConditionFormula& f, std::vector<std::string>& out);
std::vector<std::string> clause_vars(const RandomClause& rc);

Atom substitute(const Atom& a, const std::map<std::string, std::string>& subst);

// --- printing ------------------------------------------------------------

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Literal& l);
std::string to_string(const ConditionFormula& f);
std::string to_string(const RandomClause& rc);
std::string to_string(const InternalClause& ic);
std::string to_string(const Constraint& c);
std::string to_string(const CIQuery& q);

// Canonical text form: declarations, then random part, internal part and
// constraints, one clause per line. A fixpoint of parse . pretty_print.
std::string pretty_print(const ProgramStructure& p);
std::string pretty_print(const ExternalDatabase& db);

}  // namespace plci
