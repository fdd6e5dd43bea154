#include "plci/dsep.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace plci {

ObservationContext make_observation_context(const GroundGraph& graph,
                                            const std::vector<NodeId>& obs) {
  size_t n = graph.nodes.size();
  ObservationContext ctx;
  ctx.observed.assign(n, false);
  ctx.activated.assign(n, false);
  std::deque<NodeId> queue;
  for (NodeId v : obs) {
    if (v < 0 || static_cast<size_t>(v) >= n)
      throw std::out_of_range("node not in graph");
    ctx.observed[v] = true;
    if (!ctx.activated[v]) {
      ctx.activated[v] = true;
      queue.push_back(v);
    }
  }
  // Ancestor closure: walk parent edges backwards from the observed set.
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    for (NodeId p : graph.parents[v])
      if (!ctx.activated[p]) {
        ctx.activated[p] = true;
        queue.push_back(p);
      }
  }
  return ctx;
}

std::vector<NodeId> activated_closure(const GroundGraph& graph,
                                      const std::vector<NodeId>& obs) {
  ObservationContext ctx = make_observation_context(graph, obs);
  std::vector<NodeId> out;
  for (size_t i = 0; i < ctx.activated.size(); ++i)
    if (ctx.activated[i]) out.push_back(static_cast<NodeId>(i));
  return out;
}

namespace {

// State arrival: Into means the last traversed edge points into the node,
// OutOf means it points out of it (it was traversed against its direction).
enum Arrival : int { kInto = 0, kOutOf = 1 };

struct State {
  NodeId node;
  int arrival;
};

}  // namespace

DSepVerdict d_connected(const GroundGraph& graph, NodeId x, NodeId y,
                        const ObservationContext& ctx,
                        const Deadline& deadline) {
  size_t n = graph.nodes.size();
  if (x < 0 || static_cast<size_t>(x) >= n || y < 0 ||
      static_cast<size_t>(y) >= n)
    throw std::out_of_range("node not in graph");
  if (x == y) throw std::invalid_argument("query endpoints must differ");

  DSepVerdict verdict;
  if (ctx.observed[x] || ctx.observed[y]) return verdict;  // endpoint convention

  // visited[2*v + arrival]; pred remembers the state we came from so a
  // connecting walk can be reconstructed.
  std::vector<char> visited(2 * n, 0);
  std::vector<int> pred(2 * n, -2);  // -1 marks "reached directly from x"
  std::deque<State> queue;
  long polls = 0;

  auto push = [&](NodeId node, int arrival, int from_state) -> bool {
    size_t key = 2 * static_cast<size_t>(node) + arrival;
    if (visited[key]) return false;
    visited[key] = 1;
    pred[key] = from_state;
    if (node == y) return true;
    queue.push_back({node, arrival});
    return false;
  };

  auto reconstruct = [&](size_t accept_key) {
    std::vector<size_t> keys{accept_key};
    while (pred[keys.back()] >= 0) keys.push_back(static_cast<size_t>(pred[keys.back()]));
    std::reverse(keys.begin(), keys.end());
    verdict.separated = false;
    verdict.walk_nodes.push_back(x);
    for (size_t key : keys) {
      verdict.walk_nodes.push_back(static_cast<NodeId>(key / 2));
      verdict.walk_forward.push_back(key % 2 == kInto);
    }
  };

  // First step from x: no junction condition at an endpoint.
  for (NodeId c : graph.children[x])
    if (push(c, kInto, -1)) { reconstruct(2 * static_cast<size_t>(c) + kInto); return verdict; }
  for (NodeId p : graph.parents[x])
    if (push(p, kOutOf, -1)) { reconstruct(2 * static_cast<size_t>(p) + kOutOf); return verdict; }

  while (!queue.empty()) {
    if (++polls % 1024 == 0) deadline.check();
    State s = queue.front();
    queue.pop_front();
    int from = static_cast<int>(2 * static_cast<size_t>(s.node) + s.arrival);

    // Leaving through an outgoing edge makes the node a chain or fork
    // junction; both require it to be unobserved.
    if (!ctx.observed[s.node]) {
      for (NodeId c : graph.children[s.node])
        if (push(c, kInto, from)) { reconstruct(2 * static_cast<size_t>(c) + kInto); return verdict; }
    }
    // Leaving through an incoming edge: a collider when we arrived along an
    // edge pointing in (needs activation), otherwise a chain (unobserved).
    bool ok = s.arrival == kInto ? ctx.activated[s.node] : !ctx.observed[s.node];
    if (ok) {
      for (NodeId p : graph.parents[s.node])
        if (push(p, kOutOf, from)) { reconstruct(2 * static_cast<size_t>(p) + kOutOf); return verdict; }
    }
  }
  return verdict;
}

DSepVerdict d_connected(const GroundGraph& graph, NodeId x, NodeId y,
                        const std::vector<NodeId>& obs,
                        const Deadline& deadline) {
  return d_connected(graph, x, y, make_observation_context(graph, obs), deadline);
}

bool d_separated_sets(const GroundGraph& graph, const std::vector<NodeId>& a_set,
                      const std::vector<NodeId>& b_set,
                      const std::vector<NodeId>& obs) {
  for (NodeId a : a_set)
    for (NodeId b : b_set)
      if (a == b)
        throw std::invalid_argument("query sets must be disjoint");
  ObservationContext ctx = make_observation_context(graph, obs);
  for (NodeId a : a_set)
    for (NodeId b : b_set)
      if (!d_connected(graph, a, b, ctx, Deadline::none()).separated)
        return false;
  return true;
}

bool naive_d_connected(const GroundGraph& graph, NodeId x, NodeId y,
                       const std::vector<NodeId>& obs, size_t max_nodes) {
  size_t n = graph.nodes.size();
  if (n > max_nodes)
    throw std::length_error("naive d-separation guard exceeded: " +
                            std::to_string(n) + " nodes");
  if (x < 0 || static_cast<size_t>(x) >= n || y < 0 ||
      static_cast<size_t>(y) >= n)
    throw std::out_of_range("node not in graph");
  if (x == y) throw std::invalid_argument("query endpoints must differ");

  ObservationContext ctx = make_observation_context(graph, obs);
  if (ctx.observed[x] || ctx.observed[y]) return false;

  // DFS over simple paths. The junction condition of a node is checked as
  // soon as both adjacent path edges are known.
  std::vector<char> used(n, 0);
  used[x] = 1;

  // arrival: direction of the edge that entered `v` (kInto / kOutOf).
  std::function<bool(NodeId, int)> dfs = [&](NodeId v, int arrival) -> bool {
    if (v == y) return true;
    auto junction_ok = [&](bool leave_forward) -> bool {
      if (arrival == kInto && !leave_forward) return ctx.activated[v];  // collider
      return !ctx.observed[v];
    };
    for (NodeId c : graph.children[v]) {
      if (used[c] || !junction_ok(true)) continue;
      used[c] = 1;
      if (dfs(c, kInto)) return true;
      used[c] = 0;
    }
    for (NodeId p : graph.parents[v]) {
      if (used[p] || !junction_ok(false)) continue;
      used[p] = 1;
      if (dfs(p, kOutOf)) return true;
      used[p] = 0;
    }
    return false;
  };

  for (NodeId c : graph.children[x]) {
    if (used[c]) continue;
    used[c] = 1;
    if (dfs(c, kInto)) return true;
    used[c] = 0;
  }
  for (NodeId p : graph.parents[x]) {
    if (used[p]) continue;
    used[p] = 1;
    if (dfs(p, kOutOf)) return true;
    used[p] = 0;
  }
  return false;
}

bool witness_valid(const GroundGraph& graph, const DSepVerdict& verdict,
                   const ObservationContext& ctx) {
  if (verdict.separated) return false;
  const auto& nodes = verdict.walk_nodes;
  const auto& fwd = verdict.walk_forward;
  if (nodes.size() < 2 || fwd.size() != nodes.size() - 1) return false;
  if (ctx.observed[nodes.front()] || ctx.observed[nodes.back()]) return false;
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    NodeId from = fwd[i] ? nodes[i] : nodes[i + 1];
    NodeId to = fwd[i] ? nodes[i + 1] : nodes[i];
    if (!graph.has_edge(from, to)) return false;
  }
  for (size_t i = 1; i + 1 < nodes.size(); ++i) {
    bool collider = fwd[i - 1] && !fwd[i];  // -> v <-
    if (collider ? !ctx.activated[nodes[i]] : ctx.observed[nodes[i]])
      return false;
  }
  return true;
}

}  // namespace plci
