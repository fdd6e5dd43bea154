// Brute-force exact inference over the equation system with exact rational
// arithmetic, definitional conditional-independence checking, and the
// soundness / faithfulness sweeps comparing the d-separation engine
// against it.
#pragma once

#include <optional>
#include <vector>

#include "plci/deadline.hpp"
#include "plci/dsep.hpp"
#include "plci/grounding.hpp"

namespace plci {

struct GuardExceededError : std::runtime_error {
  long required;
  explicit GuardExceededError(long req)
      : std::runtime_error("oracle guard exceeded: would need " +
                           std::to_string(req) + " error terms"),
        required(req) {}
};

struct OracleLimits {
  int guard = 22;  // max error terms enumerated (2^guard valuations)
  Deadline deadline;
};

// Total assignment of the error terms, indexed like eqs.error_terms.
using ErrorValuation = std::vector<bool>;

// The unique fixpoint of the equations under a fixed error valuation,
// obtained by evaluating in topological order. Indexed by NodeId.
std::vector<bool> solve_valuation(const EquationSystem& eqs,
                                  const ErrorValuation& v);

// Exact marginal over a tuple of variables. probs[m] is the probability of
// the assignment where vars[i] is true iff bit i of m is set; the entries
// are >= 0 and sum to exactly 1.
struct JointTable {
  std::vector<NodeId> vars;
  std::vector<BigRat> probs;

  const BigRat& prob(size_t mask) const { return probs[mask]; }
};

JointTable joint(const EquationSystem& eqs, const std::vector<NodeId>& vars,
                 const OracleLimits& limits = {});

struct CIVerdict {
  bool independent = true;
  struct Counterexample {
    bool a_value, b_value;
    std::vector<std::pair<NodeId, bool>> z_assignment;
    BigRat lhs;  // joint conditional
    BigRat rhs;  // product of the marginal conditionals
  };
  std::optional<Counterexample> counterexample;
  int skipped_contexts = 0;  // observation values of probability zero
};

// Checks the definition of conditional independence for every value
// combination of a, b and the observations; equality is exact.
CIVerdict ci_check(const EquationSystem& eqs, NodeId a, NodeId b,
                   const std::vector<NodeId>& obs,
                   const OracleLimits& limits = {});

// pi(child=1 | parent=1) > pi(child=1), exact comparison. Meaningful on
// positive singly connected systems with interior parameters.
bool positive_correlation_check(const EquationSystem& eqs, NodeId parent,
                                NodeId child, const OracleLimits& limits = {});

// --- sweeps ----------------------------------------------------------------

struct SweepBudget {
  int max_obs = 3;
  OracleLimits limits;
};

struct SweepViolation {
  NodeId a, b;
  std::vector<NodeId> z;
  bool d_separated;
  CIVerdict verdict;
};

struct SweepReport {
  long triples = 0;          // (a, b, Z) combinations examined
  long separated = 0;        // d-separated triples among them
  std::vector<SweepViolation> violations;
};

// All pairs, all observation subsets up to budget.max_obs: d-separated
// triples must be independent under the oracle (Theorem 1). Violations
// must be empty on every input.
SweepReport soundness_sweep(const ProgramStructure& program,
                            const ExternalDatabase& db,
                            const ParameterAssignment& params,
                            const SweepBudget& budget = {});
SweepReport soundness_sweep(const Grounding& grounding,
                            const SweepBudget& budget = {});

// Dual direction: d-connected triples that the oracle finds independent
// (unfaithful triples). Empty on instances certified by the fragment
// module with proper parameters.
SweepReport faithfulness_sweep(const ProgramStructure& program,
                               const ExternalDatabase& db,
                               const ParameterAssignment& params,
                               const SweepBudget& budget = {});
SweepReport faithfulness_sweep(const Grounding& grounding,
                               const SweepBudget& budget = {});

// --- whole-system helpers ---------------------------------------------------

// Per-node marginal probabilities pi(G = 1) as numerators over a common
// denominator, from one enumeration pass.
struct Marginals {
  std::vector<BigInt> num_true;  // indexed by NodeId
  BigInt den;
};

Marginals node_marginals(const EquationSystem& eqs,
                         const OracleLimits& limits = {});

enum class Properness { Proper, Improper, Unchecked };

struct PropernessReport {
  Properness status = Properness::Unchecked;
  std::optional<NodeId> improper_node;
};

// Theorem 3 hypothesis 0 < pi(G) < 1 for every ground variable; Unchecked
// when the guard does not allow inference.
PropernessReport check_properness(const EquationSystem& eqs,
                                  const OracleLimits& limits = {});

struct MarkovViolation {
  NodeId x, y;
  std::vector<NodeId> parents;
};

// Every variable must be independent of each non-descendant non-parent
// given its parents. An empty result verifies the Markov property.
std::vector<MarkovViolation> markov_violations(const EquationSystem& eqs,
                                               const GroundGraph& graph,
                                               const OracleLimits& limits = {});

// Raw joint over `vars` as integer numerators over a common denominator.
// This is the primitive behind joint()/ci_check() and the sweeps.
struct RawTable {
  std::vector<NodeId> vars;
  std::vector<BigInt> num;
  BigInt den;
};

RawTable raw_joint(const EquationSystem& eqs, const std::vector<NodeId>& vars,
                   const OracleLimits& limits = {});

// Independence decision straight from a precomputed raw table whose vars
// cover {a, b} and obs. Same verdict as ci_check.
CIVerdict ci_from_table(const RawTable& table, NodeId a, NodeId b,
                        const std::vector<NodeId>& obs);

}  // namespace plci
