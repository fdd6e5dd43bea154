#include "plci/fragment.hpp"

#include <algorithm>
#include <functional>

namespace plci {

std::pair<bool, std::optional<int>> is_positive(const ProgramStructure& program) {
  for (const RandomClause& rc : program.random_part)
    for (const Literal& c : rc.causes)
      if (!c.positive) return {false, rc.clause_id};
  return {true, std::nullopt};
}

std::pair<bool, std::vector<NodeId>> is_singly_connected(const GroundGraph& graph) {
  size_t n = graph.nodes.size();
  // Undirected adjacency; the ground graph is simple and acyclic, so each
  // unordered pair carries at most one undirected edge.
  std::vector<std::vector<NodeId>> adj(n);
  for (size_t v = 0; v < n; ++v)
    for (NodeId p : graph.parents[v]) {
      adj[v].push_back(p);
      adj[p].push_back(static_cast<NodeId>(v));
    }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  std::vector<int> parent(n, -2);  // -2 unvisited, -1 root
  for (size_t root = 0; root < n; ++root) {
    if (parent[root] != -2) continue;
    parent[root] = -1;
    std::vector<NodeId> stack{static_cast<NodeId>(root)};
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : adj[v]) {
        if (w == parent[v]) continue;
        if (parent[w] != -2) {
          // Back edge v—w: the tree paths from v and w to their common
          // ancestor plus this edge form an undirected cycle.
          auto path_to_root = [&](NodeId u) {
            std::vector<NodeId> path;
            for (int c = u; c != -1; c = parent[c]) path.push_back(c);
            return path;
          };
          std::vector<NodeId> pv = path_to_root(v), pw = path_to_root(w);
          std::vector<char> on_pv(n, 0);
          for (NodeId u : pv) on_pv[u] = 1;
          NodeId meet = -1;
          for (NodeId u : pw)
            if (on_pv[u]) { meet = u; break; }
          std::vector<NodeId> cycle;
          for (NodeId u : pv) {
            cycle.push_back(u);
            if (u == meet) break;
          }
          std::vector<NodeId> wside;
          for (NodeId u : pw) {
            if (u == meet) break;
            wside.push_back(u);
          }
          std::reverse(wside.begin(), wside.end());
          cycle.insert(cycle.end(), wside.begin(), wside.end());
          cycle.push_back(v);  // close the loop
          return {false, cycle};
        }
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  return {true, {}};
}

std::pair<bool, std::optional<NodeId>> sources_are_facts(
    const GroundGraph& graph, const EquationSystem& eqs) {
  for (size_t v = 0; v < graph.nodes.size(); ++v) {
    if (!graph.parents[v].empty()) continue;
    bool has_fact = std::any_of(
        eqs.equations[v].disjuncts.begin(), eqs.equations[v].disjuncts.end(),
        [](const Disjunct& d) { return d.literals.empty(); });
    if (!has_fact) return {false, static_cast<NodeId>(v)};
  }
  return {true, std::nullopt};
}

std::pair<bool, std::optional<int>> params_interior(
    const ProgramStructure& program, const ParameterAssignment& params) {
  for (const RandomClause& rc : program.random_part) {
    auto it = params.probs.find(rc.clause_id);
    if (it == params.probs.end() || it->second <= 0 || it->second >= 1)
      return {false, rc.clause_id};
  }
  return {true, std::nullopt};
}

FragmentReport fragment_report(const ProgramStructure& program,
                               const Grounding& grounding,
                               const ParameterAssignment& params,
                               const OracleLimits& limits) {
  FragmentReport report;
  std::tie(report.positive, report.offending_clause) = is_positive(program);
  std::tie(report.singly_connected, report.cycle_witness) =
      is_singly_connected(grounding.graph);
  if (grounding.has_equations) {
    std::tie(report.sources_fact_grounded, report.offending_source) =
        sources_are_facts(grounding.graph, grounding.eqs);
  }
  std::tie(report.params_in_interior, report.offending_param) =
      params_interior(program, params);
  report.complete_oracle = report.positive && report.singly_connected &&
                           report.sources_fact_grounded &&
                           report.params_in_interior;
  if (grounding.has_equations)
    report.properness = check_properness(grounding.eqs, limits);
  return report;
}

}  // namespace plci
