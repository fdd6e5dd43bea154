// Membership in the completeness fragment: positive program, singly
// connected ground graph, probabilistic-fact sources, parameters strictly
// inside (0,1). On such instances (with proper unconditional probabilities)
// d-separation is a complete independence oracle.
#pragma once

#include <optional>
#include <vector>

#include "plci/grounding.hpp"
#include "plci/oracle.hpp"

namespace plci {

// true iff no random clause has a negative cause; witness: offending clause.
std::pair<bool, std::optional<int>> is_positive(const ProgramStructure& program);

// true iff the underlying undirected simple graph is a forest; witness: an
// undirected cycle (first node repeated last).
std::pair<bool, std::vector<NodeId>> is_singly_connected(const GroundGraph& graph);

// true iff every in-degree-0 node has a disjunct with an empty literal set
// (it is grounded by at least one probabilistic fact); witness: a source
// without one.
std::pair<bool, std::optional<NodeId>> sources_are_facts(const GroundGraph& graph,
                                                         const EquationSystem& eqs);

// true iff every resolved clause probability lies strictly inside (0,1);
// witness: offending clause id. A clause without a resolved probability
// counts as a failure.
std::pair<bool, std::optional<int>> params_interior(const ProgramStructure& program,
                                                    const ParameterAssignment& params);

struct FragmentReport {
  bool positive = false;
  std::optional<int> offending_clause;

  bool singly_connected = false;
  std::vector<NodeId> cycle_witness;

  bool sources_fact_grounded = false;
  std::optional<NodeId> offending_source;

  bool params_in_interior = false;
  std::optional<int> offending_param;

  bool complete_oracle = false;  // conjunction of the four flags above

  // Theorem 3's properness hypothesis is semantic; Unchecked when the
  // oracle guard does not allow verifying it.
  PropernessReport properness;
};

FragmentReport fragment_report(const ProgramStructure& program,
                               const Grounding& grounding,
                               const ParameterAssignment& params,
                               const OracleLimits& limits = {});

}  // namespace plci
