// d-separation on the ground graph: reachability over (node, arrival
// direction) states, plus a naive simple-path enumerator used to
// cross-validate it at small scale.
#pragma once

#include <optional>
#include <vector>

#include "plci/deadline.hpp"
#include "plci/grounding.hpp"

namespace plci {

// Observed node set with its activation closure (ancestors of observed
// nodes, observed nodes included), computed once per query batch.
struct ObservationContext {
  std::vector<bool> observed;
  std::vector<bool> activated;
};

ObservationContext make_observation_context(const GroundGraph& graph,
                                            const std::vector<NodeId>& obs);

// Nodes with a directed path (length >= 0) to an observed node; sorted.
std::vector<NodeId> activated_closure(const GroundGraph& graph,
                                      const std::vector<NodeId>& obs);

struct DSepVerdict {
  bool separated = true;
  // d-connecting walk when not separated: walk_nodes[0] = x, back() = y;
  // walk_forward[i] is true when the i-th edge points from walk_nodes[i]
  // to walk_nodes[i+1].
  std::vector<NodeId> walk_nodes;
  std::vector<bool> walk_forward;
};

// Breadth-first reachability over at most 2*|nodes| states. If x or y is
// observed the verdict is "separated" (the endpoint convention). The
// context overload reuses a precomputed activation closure across a batch.
DSepVerdict d_connected(const GroundGraph& graph, NodeId x, NodeId y,
                        const ObservationContext& ctx, const Deadline& deadline);
DSepVerdict d_connected(const GroundGraph& graph, NodeId x, NodeId y,
                        const std::vector<NodeId>& obs,
                        const Deadline& deadline = {});

// True iff every pair of a_set x b_set is d-separated by obs.
bool d_separated_sets(const GroundGraph& graph, const std::vector<NodeId>& a_set,
                      const std::vector<NodeId>& b_set,
                      const std::vector<NodeId>& obs);

// Exhaustive enumeration of simple undirected paths, checking blocking and
// activation node by node. Guarded: refuses graphs above `max_nodes`.
bool naive_d_connected(const GroundGraph& graph, NodeId x, NodeId y,
                       const std::vector<NodeId>& obs, size_t max_nodes = 14);

// Re-checks a walk returned by d_connected edge by edge and junction by
// junction. Used by tests and by the verdict printer.
bool witness_valid(const GroundGraph& graph, const DSepVerdict& verdict,
                   const ObservationContext& ctx);

}  // namespace plci
