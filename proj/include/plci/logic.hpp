// Stratified bottom-up evaluation of the internal part over an external
// database, integrity-constraint checking, and the shared matching
// machinery used by grounding.
#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "plci/ast.hpp"

namespace plci {

struct Stratification {
  // strata[i] lists the internal predicates of level i (sorted); positive
  // dependencies never point upward, negative ones point strictly down.
  std::vector<std::vector<std::string>> strata;
  std::map<std::string, int> level;
};

struct NotStratifiedError : ValidationError {
  std::vector<std::string> cycle;  // predicate cycle through a negation
  explicit NotStratifiedError(std::vector<std::string> cyc);
};

Stratification stratify(const ProgramStructure& program);

using Tuple = std::vector<std::string>;
using TupleSet = std::set<Tuple>;

// The minimal Herbrand model E^I: external facts plus derived internal
// atoms, indexed by predicate.
class HerbrandModel {
 public:
  bool insert(const std::string& pred, Tuple t) {
    return rels_[pred].insert(std::move(t)).second;
  }
  bool holds(const std::string& pred, const Tuple& t) const {
    auto it = rels_.find(pred);
    return it != rels_.end() && it->second.count(t) > 0;
  }
  bool contains(const Atom& ground_atom) const;
  const TupleSet* relation(const std::string& pred) const {
    auto it = rels_.find(pred);
    return it == rels_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, TupleSet>& relations() const { return rels_; }
  size_t size() const;
  std::vector<Atom> atoms() const;  // sorted

  bool operator==(const HerbrandModel& other) const {
    return rels_ == other.rels_;
  }

 private:
  std::map<std::string, TupleSet> rels_;
};

// Computes E^I by semi-naive iteration per stratum. Throws
// NotStratifiedError when the internal part is not stratified.
HerbrandModel evaluate(const ProgramStructure& program,
                       const ExternalDatabase& db);

struct ConstraintViolation {
  int constraint_index;  // 0-based into program.constraints
  std::map<std::string, std::string> subst;
};

struct ConstraintReport {
  bool ok = true;
  std::vector<ConstraintViolation> violations;
};

ConstraintReport check_constraints(const HerbrandModel& model,
                                   const ProgramStructure& program);

// --- matching ------------------------------------------------------------

using Substitution = std::map<std::string, std::string>;

// Enumerates substitutions for the variables of `body` extending `base`
// under which every positive literal is in the model, every negative one
// is absent and every builtin holds. Variables of negative or builtin
// literals must be bound by positives (guaranteed for range-restricted
// clauses). `fn` returns false to stop early.
void for_each_match(const HerbrandModel& model, const std::vector<Literal>& body,
                    const Substitution& base,
                    const std::function<bool(const Substitution&)>& fn);

// Truth of a condition formula under a substitution total on its variables.
bool eval_formula(const HerbrandModel& model, const ConditionFormula& f,
                  const Substitution& s);

// Enumerates substitutions over `required_vars` satisfying `cond`:
// joins the top-level positive literals, enumerates any variables bound
// only below a disjunction over the active domain, then filters by the
// whole formula.
void for_each_formula_match(
    const HerbrandModel& model, const ConditionFormula& cond,
    const std::vector<std::string>& required_vars,
    const std::set<std::string>& domain,
    const std::function<bool(const Substitution&)>& fn);

}  // namespace plci
