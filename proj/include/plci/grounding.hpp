// Construction of ground variables, the ground graph and the Boolean
// equation system of a program structure over an external database.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plci/ast.hpp"
#include "plci/logic.hpp"

namespace plci {

// A ground atom over a random predicate; one Boolean variable of the
// induced distribution.
struct GroundAtom {
  std::string pred;
  std::vector<std::string> args;

  static GroundAtom from_atom(const Atom& a);
  Atom to_atom() const;
  std::string str() const;
  auto operator<=>(const GroundAtom&) const = default;
};

using NodeId = int;

struct GroundGraph {
  std::vector<GroundAtom> nodes;  // sorted; position is the node id
  std::vector<std::vector<NodeId>> parents;   // sorted unique
  std::vector<std::vector<NodeId>> children;  // sorted unique
  std::map<std::pair<NodeId, NodeId>, std::set<int>> provenance;

  std::optional<NodeId> find(const GroundAtom& a) const;
  size_t edge_count() const;
  bool has_edge(NodeId from, NodeId to) const;
};

// u(RC, kappa): one independent Boolean noise variable per satisfying
// clause instantiation. `subst` is keyed by var(RC) in first-occurrence
// order, which fixes term identity across runs.
struct ErrorTerm {
  int clause_id;
  std::vector<std::pair<std::string, std::string>> subst;
  BigRat prob;
};

struct Disjunct {
  std::vector<std::pair<NodeId, bool>> literals;  // sorted by node id
  int term;                                       // index into error_terms
};

struct GroundEquation {
  NodeId target;
  std::vector<Disjunct> disjuncts;  // empty = constant false
};

struct EquationSystem {
  std::vector<GroundEquation> equations;  // indexed by NodeId, total
  std::vector<ErrorTerm> error_terms;     // (clause_id, subst) lexicographic
};

struct GroundingOptions {
  // With sort pruning (default) the variables are the clause-induced
  // instantiations; all_groundings adds every |domain|^arity instantiation
  // as a constant-false variable.
  bool all_groundings = false;
};

struct MissingParameterError : ValidationError {
  int clause_id;
  explicit MissingParameterError(int id)
      : ValidationError("missing parameter for clause " + std::to_string(id) +
                        " with unspecified probability"),
        clause_id(id) {}
};

// One satisfying (clause, substitution) pair of the grounding.
struct ClauseInstance {
  const RandomClause* clause;
  std::vector<std::string> varlist;  // var(RC), first-occurrence order
  Substitution subst;
};

// All satisfying instantiations, ordered by (clause_id, substitution).
std::vector<ClauseInstance> enumerate_instances(const ProgramStructure& program,
                                                const HerbrandModel& model,
                                                const std::set<std::string>& domain);

std::vector<GroundAtom> ground_variables(const ProgramStructure& program,
                                         const ExternalDatabase& db,
                                         const GroundingOptions& opts = {});

GroundGraph ground_graph(const ProgramStructure& program,
                         const ExternalDatabase& db,
                         const GroundingOptions& opts = {});

struct AcyclicityResult {
  bool ok = true;
  std::vector<NodeId> topo_order;  // on success
  std::vector<NodeId> cycle;       // on failure; first node repeated last
};

AcyclicityResult check_acyclic(const GroundGraph& graph);

EquationSystem ground_equations(const ProgramStructure& program,
                                const ExternalDatabase& db,
                                const ParameterAssignment& params,
                                const GroundingOptions& opts = {});

std::string emit_dot(const GroundGraph& graph);

// Everything the query pipeline needs, grounded once per invocation.
struct Grounding {
  HerbrandModel model;
  GroundGraph graph;
  AcyclicityResult acyclicity;
  EquationSystem eqs;  // empty unless params were supplied and graph acyclic
  bool has_equations = false;
};

Grounding ground(const ProgramStructure& program, const ExternalDatabase& db,
                 const std::optional<ParameterAssignment>& params,
                 const GroundingOptions& opts = {});

// Number of grounding passes performed by this process; the CLI reports it
// in verbose mode so batch runs can show they ground only once.
long grounding_counter();

}  // namespace plci
