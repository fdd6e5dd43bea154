#include "plci/grounding.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <sstream>

namespace plci {

namespace {

std::atomic<long> g_grounding_counter{0};

}  // namespace

long grounding_counter() { return g_grounding_counter.load(); }

GroundAtom GroundAtom::from_atom(const Atom& a) {
  GroundAtom g;
  g.pred = a.predicate;
  for (const Term& t : a.args) {
    if (t.is_var())
      throw ValidationError("atom " + to_string(a) + " is not ground");
    g.args.push_back(t.name);
  }
  return g;
}

Atom GroundAtom::to_atom() const {
  Atom a;
  a.predicate = pred;
  for (const std::string& c : args) a.args.push_back({TermKind::Constant, c});
  return a;
}

std::string GroundAtom::str() const {
  if (args.empty()) return pred;
  std::string s = pred + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += args[i];
  }
  return s + ")";
}

std::optional<NodeId> GroundGraph::find(const GroundAtom& a) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), a);
  if (it == nodes.end() || *it != a) return std::nullopt;
  return static_cast<NodeId>(it - nodes.begin());
}

size_t GroundGraph::edge_count() const {
  size_t n = 0;
  for (const auto& ps : parents) n += ps.size();
  return n;
}

bool GroundGraph::has_edge(NodeId from, NodeId to) const {
  const auto& ps = parents[to];
  return std::binary_search(ps.begin(), ps.end(), from);
}

std::vector<ClauseInstance> enumerate_instances(
    const ProgramStructure& program, const HerbrandModel& model,
    const std::set<std::string>& domain) {
  g_grounding_counter.fetch_add(1);
  std::vector<ClauseInstance> out;
  for (const RandomClause& rc : program.random_part) {
    std::vector<std::string> vars = clause_vars(rc);
    std::vector<Substitution> substs;
    for_each_formula_match(model, rc.condition, vars, domain,
                           [&](const Substitution& s) {
                             substs.push_back(s);
                             return true;
                           });
    // (clause_id, substitution) lexicographic order, keyed by the clause's
    // variable list.
    std::sort(substs.begin(), substs.end(),
              [&](const Substitution& a, const Substitution& b) {
                for (const std::string& v : vars) {
                  const std::string& av = a.at(v);
                  const std::string& bv = b.at(v);
                  if (av != bv) return av < bv;
                }
                return false;
              });
    substs.erase(std::unique(substs.begin(), substs.end()), substs.end());
    for (Substitution& s : substs)
      out.push_back({&rc, vars, std::move(s)});
  }
  return out;
}

namespace {

GroundAtom instantiate(const Atom& a, const Substitution& s) {
  return GroundAtom::from_atom(substitute(a, s));
}

struct GroundCore {
  std::vector<ClauseInstance> instances;
  std::set<GroundAtom> variables;
};

GroundCore ground_core(const ProgramStructure& program,
                       const ExternalDatabase& db, const HerbrandModel& model,
                       const GroundingOptions& opts) {
  GroundCore core;
  core.instances = enumerate_instances(program, model, db.constants);
  for (const ClauseInstance& inst : core.instances) {
    core.variables.insert(instantiate(inst.clause->effect, inst.subst));
    for (const Literal& c : inst.clause->causes)
      core.variables.insert(instantiate(c.atom, inst.subst));
  }
  if (opts.all_groundings) {
    for (const auto& [pred, arity] : program.decls.random) {
      std::vector<std::string> args(arity);
      std::function<void(int)> rec = [&](int k) {
        if (k == arity) {
          core.variables.insert(GroundAtom{pred, args});
          return;
        }
        for (const std::string& c : db.constants) {
          args[k] = c;
          rec(k + 1);
        }
      };
      rec(0);
    }
  }
  return core;
}

GroundGraph build_graph(const GroundCore& core) {
  GroundGraph g;
  g.nodes.assign(core.variables.begin(), core.variables.end());
  g.parents.assign(g.nodes.size(), {});
  g.children.assign(g.nodes.size(), {});
  std::set<std::pair<NodeId, NodeId>> edges;
  for (const ClauseInstance& inst : core.instances) {
    NodeId child = *g.find(instantiate(inst.clause->effect, inst.subst));
    for (const Literal& c : inst.clause->causes) {
      NodeId parent = *g.find(instantiate(c.atom, inst.subst));
      edges.emplace(parent, child);
      g.provenance[{parent, child}].insert(inst.clause->clause_id);
    }
  }
  for (const auto& [from, to] : edges) {
    g.parents[to].push_back(from);
    g.children[from].push_back(to);
  }
  for (auto& v : g.parents) std::sort(v.begin(), v.end());
  for (auto& v : g.children) std::sort(v.begin(), v.end());
  return g;
}

EquationSystem build_equations(const GroundCore& core, const GroundGraph& graph,
                               const ParameterAssignment& params) {
  EquationSystem eqs;
  eqs.equations.resize(graph.nodes.size());
  for (size_t i = 0; i < graph.nodes.size(); ++i)
    eqs.equations[i].target = static_cast<NodeId>(i);

  for (const ClauseInstance& inst : core.instances) {
    const RandomClause& rc = *inst.clause;
    auto pit = params.probs.find(rc.clause_id);
    if (pit == params.probs.end()) throw MissingParameterError(rc.clause_id);

    ErrorTerm term;
    term.clause_id = rc.clause_id;
    for (const std::string& v : inst.varlist)
      term.subst.emplace_back(v, inst.subst.at(v));
    term.prob = pit->second;
    int term_index = static_cast<int>(eqs.error_terms.size());
    eqs.error_terms.push_back(std::move(term));

    Disjunct d;
    d.term = term_index;
    for (const Literal& c : rc.causes) {
      NodeId id = *graph.find(instantiate(c.atom, inst.subst));
      d.literals.emplace_back(id, c.positive);
    }
    std::sort(d.literals.begin(), d.literals.end());
    d.literals.erase(std::unique(d.literals.begin(), d.literals.end()),
                     d.literals.end());
    NodeId target = *graph.find(instantiate(rc.effect, inst.subst));
    eqs.equations[target].disjuncts.push_back(std::move(d));
  }
  return eqs;
}

}  // namespace

std::vector<GroundAtom> ground_variables(const ProgramStructure& program,
                                         const ExternalDatabase& db,
                                         const GroundingOptions& opts) {
  HerbrandModel model = evaluate(program, db);
  GroundCore core = ground_core(program, db, model, opts);
  return {core.variables.begin(), core.variables.end()};
}

GroundGraph ground_graph(const ProgramStructure& program,
                         const ExternalDatabase& db,
                         const GroundingOptions& opts) {
  HerbrandModel model = evaluate(program, db);
  return build_graph(ground_core(program, db, model, opts));
}

AcyclicityResult check_acyclic(const GroundGraph& graph) {
  AcyclicityResult res;
  size_t n = graph.nodes.size();
  std::vector<int> indeg(n, 0);
  for (size_t i = 0; i < n; ++i) indeg[i] = static_cast<int>(graph.parents[i].size());
  // Kahn, layer by layer: a node appears only after every node of strictly
  // smaller depth, and layers are emitted in node-id order. This makes the
  // order reflect the causal layering (sources, then their effects, ...).
  std::vector<NodeId> layer;
  for (size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) layer.push_back(static_cast<NodeId>(i));
  while (!layer.empty()) {
    std::vector<NodeId> next;
    for (NodeId v : layer) {
      res.topo_order.push_back(v);
      for (NodeId c : graph.children[v])
        if (--indeg[c] == 0) next.push_back(c);
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  if (res.topo_order.size() == n) return res;

  // Shortest cycle among the residual nodes.
  res.ok = false;
  res.topo_order.clear();
  std::vector<bool> residual(n, false);
  for (size_t i = 0; i < n; ++i) residual[i] = indeg[i] > 0;
  std::vector<NodeId> best;
  for (size_t s = 0; s < n; ++s) {
    if (!residual[s]) continue;
    std::vector<NodeId> pred(n, -1);
    std::vector<bool> seen(n, false);
    std::deque<NodeId> queue{static_cast<NodeId>(s)};
    seen[s] = true;
    std::vector<NodeId> found;
    while (!queue.empty() && found.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      for (NodeId c : graph.children[v]) {
        if (!residual[c]) continue;
        if (c == static_cast<NodeId>(s)) {
          found.push_back(v);
          break;
        }
        if (!seen[c]) {
          seen[c] = true;
          pred[c] = v;
          queue.push_back(c);
        }
      }
    }
    if (found.empty()) continue;
    // The pred chain of any reached node roots at s, so the walk below
    // always ends by pushing s itself.
    std::vector<NodeId> cycle;
    for (NodeId v = found[0]; v != -1; v = pred[v]) cycle.push_back(v);
    std::reverse(cycle.begin(), cycle.end());  // s ... v
    cycle.push_back(static_cast<NodeId>(s));   // close the loop
    if (best.empty() || cycle.size() < best.size()) best = std::move(cycle);
  }
  res.cycle = std::move(best);
  return res;
}

EquationSystem ground_equations(const ProgramStructure& program,
                                const ExternalDatabase& db,
                                const ParameterAssignment& params,
                                const GroundingOptions& opts) {
  HerbrandModel model = evaluate(program, db);
  GroundCore core = ground_core(program, db, model, opts);
  GroundGraph graph = build_graph(core);
  AcyclicityResult acyc = check_acyclic(graph);
  if (!acyc.ok) {
    std::string cyc;
    for (size_t i = 0; i < acyc.cycle.size(); ++i) {
      if (i) cyc += " -> ";
      cyc += graph.nodes[acyc.cycle[i]].str();
    }
    throw ValidationError("ground graph is cyclic: " + cyc);
  }
  return build_equations(core, graph, params);
}

std::string emit_dot(const GroundGraph& graph) {
  std::ostringstream os;
  os << "digraph ground {\n";
  for (const GroundAtom& n : graph.nodes)  // nodes are stored sorted
    os << "  \"" << n.str() << "\";\n";
  for (const auto& [edge, clauses] : graph.provenance) {
    os << "  \"" << graph.nodes[edge.first].str() << "\" -> \""
       << graph.nodes[edge.second].str() << "\" [label=\"";
    bool first = true;
    for (int id : clauses) {
      if (!first) os << ",";
      os << id;
      first = false;
    }
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

Grounding ground(const ProgramStructure& program, const ExternalDatabase& db,
                 const std::optional<ParameterAssignment>& params,
                 const GroundingOptions& opts) {
  Grounding g;
  g.model = evaluate(program, db);
  GroundCore core = ground_core(program, db, g.model, opts);
  g.graph = build_graph(core);
  g.acyclicity = check_acyclic(g.graph);
  if (params && g.acyclicity.ok) {
    g.eqs = build_equations(core, g.graph, *params);
    g.has_equations = true;
  }
  return g;
}

}  // namespace plci
