#include "plci/json_io.hpp"

namespace plci {

Json model_json(const HerbrandModel& model) {
  Json atoms = Json::array();
  for (const Atom& a : model.atoms()) atoms.push_back(to_string(a));
  return Json{{"atoms", std::move(atoms)}, {"size", model.size()}};
}

Json constraint_report_json(const ConstraintReport& report,
                            const ProgramStructure& program) {
  Json violations = Json::array();
  for (const ConstraintViolation& v : report.violations) {
    Json subst = Json::object();
    for (const auto& [var, val] : v.subst) subst[var] = val;
    violations.push_back(
        {{"constraint", to_string(program.constraints[v.constraint_index])},
         {"index", v.constraint_index},
         {"subst", std::move(subst)}});
  }
  return Json{{"ok", report.ok}, {"violations", std::move(violations)}};
}

Json graph_json(const GroundGraph& graph) {
  Json nodes = Json::array();
  for (const GroundAtom& n : graph.nodes) nodes.push_back(n.str());
  Json edges = Json::array();
  for (const auto& [edge, clauses] : graph.provenance) {
    Json ids = Json::array();
    for (int id : clauses) ids.push_back(id);
    edges.push_back({{"from", graph.nodes[edge.first].str()},
                     {"to", graph.nodes[edge.second].str()},
                     {"clauses", std::move(ids)}});
  }
  return Json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Json equations_json(const GroundGraph& graph, const EquationSystem& eqs) {
  Json out = Json::array();
  for (const GroundEquation& eq : eqs.equations) {
    Json disjuncts = Json::array();
    for (const Disjunct& d : eq.disjuncts) {
      Json lits = Json::array();
      for (const auto& [node, positive] : d.literals)
        lits.push_back((positive ? "" : "\\+") + graph.nodes[node].str());
      const ErrorTerm& u = eqs.error_terms[d.term];
      Json subst = Json::object();
      for (const auto& [var, val] : u.subst) subst[var] = val;
      disjuncts.push_back({{"lits", std::move(lits)},
                           {"u",
                            {{"clause", u.clause_id},
                             {"subst", std::move(subst)},
                             {"p", rat_to_fraction(u.prob)}}}});
    }
    out.push_back({{"var", graph.nodes[eq.target].str()},
                   {"disjuncts", std::move(disjuncts)}});
  }
  return out;
}

Json witness_json(const GroundGraph& graph, const DSepVerdict& verdict) {
  Json walk = Json::array();
  if (verdict.separated) return walk;
  for (size_t i = 0; i < verdict.walk_nodes.size(); ++i) {
    walk.push_back(graph.nodes[verdict.walk_nodes[i]].str());
    if (i < verdict.walk_forward.size())
      walk.push_back(verdict.walk_forward[i] ? "->" : "<-");
  }
  return walk;
}

Json dsep_verdict_json(const GroundGraph& graph, const DSepVerdict& verdict,
                       long micros) {
  return Json{{"separated", verdict.separated},
              {"witness", witness_json(graph, verdict)},
              {"micros", micros}};
}

Json ci_verdict_json(const GroundGraph& graph, const CIVerdict& verdict,
                     long micros) {
  Json out{{"independent", verdict.independent},
           {"skipped_contexts", verdict.skipped_contexts},
           {"micros", micros}};
  if (verdict.counterexample) {
    const auto& ce = *verdict.counterexample;
    Json z = Json::object();
    for (const auto& [node, value] : ce.z_assignment)
      z[graph.nodes[node].str()] = value;
    out["counterexample"] = {
        {"a_value", ce.a_value},
        {"b_value", ce.b_value},
        {"z", std::move(z)},
        {"lhs", rat_to_fraction(ce.lhs)},
        {"lhs_approx", rat_approx(ce.lhs)},
        {"rhs", rat_to_fraction(ce.rhs)},
        {"rhs_approx", rat_approx(ce.rhs)}};
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

Json fragment_report_json(const GroundGraph& graph,
                          const FragmentReport& report) {
  Json out;
  out["positive"] = report.positive;
  if (report.offending_clause) out["offending_clause"] = *report.offending_clause;
  out["singly_connected"] = report.singly_connected;
  if (!report.cycle_witness.empty()) {
    Json cyc = Json::array();
    for (NodeId v : report.cycle_witness) cyc.push_back(graph.nodes[v].str());
    out["cycle_witness"] = std::move(cyc);
  }
  out["sources_are_facts"] = report.sources_fact_grounded;
  if (report.offending_source)
    out["offending_source"] = graph.nodes[*report.offending_source].str();
  out["params_interior"] = report.params_in_interior;
  if (report.offending_param) out["offending_param"] = *report.offending_param;
  out["complete_oracle"] = report.complete_oracle;
  switch (report.properness.status) {
    case Properness::Proper: out["properness"] = "proper"; break;
    case Properness::Improper: out["properness"] = "improper"; break;
    case Properness::Unchecked: out["properness"] = "unchecked"; break;
  }
  if (report.properness.improper_node)
    out["improper_node"] = graph.nodes[*report.properness.improper_node].str();
  return out;
}

Json sweep_report_json(const GroundGraph& graph, const SweepReport& report,
                       bool faithfulness) {
  Json violations = Json::array();
  for (const SweepViolation& v : report.violations) {
    Json z = Json::array();
    for (NodeId n : v.z) z.push_back(graph.nodes[n].str());
    violations.push_back({{"a", graph.nodes[v.a].str()},
                          {"b", graph.nodes[v.b].str()},
                          {"z", std::move(z)},
                          {"d_separated", v.d_separated},
                          {"oracle", ci_verdict_json(graph, v.verdict, 0)}});
  }
  return Json{{"kind", faithfulness ? "faithfulness" : "soundness"},
              {"triples", report.triples},
              {"d_separated", report.separated},
              {"violations", std::move(violations)},
              {"ok", report.violations.empty()}};
}

Json bench_result_json(const BenchResult& result) {
  Json meta = Json::object();
  for (const auto& [k, v] : result.metadata) meta[k] = v;
  Json records = Json::array();
  for (const BenchRecord& r : result.records)
    records.push_back({{"S", r.size},
                       {"graph", r.graph},
                       {"a", r.a},
                       {"b", r.b},
                       {"regime", r.regime},
                       {"mode", r.mode},
                       {"verdict", r.verdict},
                       {"micros", r.micros},
                       {"timeout", r.timed_out}});
  Json summaries = Json::array();
  for (const BenchSummary& s : result.summaries)
    summaries.push_back({{"S", s.size},
                         {"mode", s.mode},
                         {"regime", s.regime},
                         {"median_us", s.median_us},
                         {"max_us", s.max_us},
                         {"timeouts", s.timeouts}});
  return Json{{"metadata", std::move(meta)},
              {"records", std::move(records)},
              {"summaries", std::move(summaries)}};
}

}  // namespace plci
