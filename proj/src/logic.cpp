#include "plci/logic.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

namespace plci {

namespace {

std::string join_cycle(const std::vector<std::string>& cycle) {
  std::string s;
  for (size_t i = 0; i < cycle.size(); ++i) {
    if (i) s += " -> ";
    s += cycle[i];
  }
  return s;
}

}  // namespace

NotStratifiedError::NotStratifiedError(std::vector<std::string> cyc)
    : ValidationError("internal part is not stratified: cycle through "
                      "negation " +
                      join_cycle(cyc)),
      cycle(std::move(cyc)) {}

Stratification stratify(const ProgramStructure& program) {
  // Dependency graph over internal predicates: body predicate -> head.
  struct Edge { std::string from, to; bool negative; };
  std::vector<Edge> edges;
  std::set<std::string> preds;
  for (const auto& [p, _] : program.decls.internal) preds.insert(p);
  for (const InternalClause& ic : program.internal_part)
    for (const Literal& l : ic.body)
      if (!l.atom.is_builtin() && program.decls.is_internal(l.atom.predicate))
        edges.push_back({l.atom.predicate, ic.head.predicate, !l.positive});

  // Tarjan SCC.
  std::map<std::string, std::vector<size_t>> out;
  for (size_t i = 0; i < edges.size(); ++i) out[edges[i].from].push_back(i);
  std::map<std::string, int> index, low, comp;
  std::vector<std::string> stack;
  std::set<std::string> on_stack;
  int next_index = 0, next_comp = 0;
  std::function<void(const std::string&)> strongconnect = [&](const std::string& v) {
    index[v] = low[v] = next_index++;
    stack.push_back(v);
    on_stack.insert(v);
    for (size_t ei : out[v]) {
      const std::string& w = edges[ei].to;
      if (!index.count(w)) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      for (;;) {
        std::string w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp[w] = next_comp;
        if (w == v) break;
      }
      ++next_comp;
    }
  };
  for (const std::string& p : preds)
    if (!index.count(p)) strongconnect(p);

  // A negative edge inside one SCC means recursion through negation.
  for (const Edge& e : edges) {
    if (!e.negative || comp[e.from] != comp[e.to]) continue;
    // Witness: path e.to ~> e.from inside the SCC, then the negative edge.
    std::map<std::string, std::string> parent;
    std::deque<std::string> queue{e.to};
    parent[e.to] = e.to;
    while (!queue.empty()) {
      std::string v = queue.front();
      queue.pop_front();
      if (v == e.from) break;
      for (size_t ei : out[v]) {
        const std::string& w = edges[ei].to;
        if (comp[w] != comp[e.to] || parent.count(w)) continue;
        parent[w] = v;
        queue.push_back(w);
      }
    }
    std::vector<std::string> path;
    for (std::string v = e.from;; v = parent[v]) {
      path.push_back(v);
      if (v == e.to) break;
    }
    std::reverse(path.begin(), path.end());  // e.to ... e.from
    path.push_back(e.to);                    // close via the negative edge
    throw NotStratifiedError(std::move(path));
  }

  // Minimal levels: level(head) >= level(body) (+1 when negative).
  // Iterate to a fixpoint; termination is guaranteed since negative edges
  // never stay inside an SCC.
  std::map<std::string, int> level;
  for (const std::string& p : preds) level[p] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Edge& e : edges) {
      int need = level[e.from] + (e.negative ? 1 : 0);
      if (level[e.to] < need) {
        level[e.to] = need;
        changed = true;
      }
    }
  }

  Stratification st;
  std::map<int, std::vector<std::string>> by_level;
  for (const auto& [p, l] : level) by_level[l].push_back(p);
  int idx = 0;
  for (auto& [_, group] : by_level) {
    std::sort(group.begin(), group.end());
    for (const std::string& p : group) st.level[p] = idx;
    st.strata.push_back(std::move(group));
    ++idx;
  }
  return st;
}

bool HerbrandModel::contains(const Atom& ground_atom) const {
  Tuple t;
  t.reserve(ground_atom.args.size());
  for (const Term& a : ground_atom.args) t.push_back(a.name);
  return holds(ground_atom.predicate, t);
}

size_t HerbrandModel::size() const {
  size_t n = 0;
  for (const auto& [_, ts] : rels_) n += ts.size();
  return n;
}

std::vector<Atom> HerbrandModel::atoms() const {
  std::vector<Atom> out;
  for (const auto& [pred, ts] : rels_)
    for (const Tuple& t : ts) {
      Atom a;
      a.predicate = pred;
      for (const std::string& c : t) a.args.push_back({TermKind::Constant, c});
      out.push_back(std::move(a));
    }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Binds `atom` against `tuple` under `s`; returns false on mismatch.
bool unify_tuple(const Atom& atom, const Tuple& tuple, Substitution& s,
                 std::vector<std::string>& bound_here) {
  for (size_t i = 0; i < atom.args.size(); ++i) {
    const Term& t = atom.args[i];
    if (!t.is_var()) {
      if (t.name != tuple[i]) return false;
      continue;
    }
    auto it = s.find(t.name);
    if (it != s.end()) {
      if (it->second != tuple[i]) return false;
    } else {
      s.emplace(t.name, tuple[i]);
      bound_here.push_back(t.name);
    }
  }
  return true;
}

std::string resolve(const Term& t, const Substitution& s) {
  if (!t.is_var()) return t.name;
  auto it = s.find(t.name);
  if (it == s.end())
    throw ValidationError("unbound variable " + t.name +
                          " in a negative or builtin literal");
  return it->second;
}

bool check_literal(const HerbrandModel& model, const Literal& l,
                   const Substitution& s) {
  if (l.atom.builtin == Builtin::Eq)
    return (resolve(l.atom.args[0], s) == resolve(l.atom.args[1], s)) ==
           l.positive;
  if (l.atom.builtin == Builtin::Neq)
    return (resolve(l.atom.args[0], s) != resolve(l.atom.args[1], s)) ==
           l.positive;
  Tuple t;
  t.reserve(l.atom.args.size());
  for (const Term& a : l.atom.args) t.push_back(resolve(a, s));
  return model.holds(l.atom.predicate, t) == l.positive;
}

// Recursive join over the positive literals, checks afterwards. `sources`
// optionally overrides the relation a given positive literal scans.
bool match_rec(const HerbrandModel& model,
               const std::vector<const Literal*>& positives,
               const std::vector<const TupleSet*>& sources, size_t idx,
               const std::vector<const Literal*>& checks, Substitution& s,
               const std::function<bool(const Substitution&)>& fn) {
  if (idx == positives.size()) {
    for (const Literal* l : checks)
      if (!check_literal(model, *l, s)) return true;  // reject, keep going
    return fn(s);
  }
  const Atom& atom = positives[idx]->atom;
  const TupleSet* rel = sources[idx];
  if (!rel) return true;  // empty relation
  for (const Tuple& t : *rel) {
    if (t.size() != atom.args.size()) continue;
    std::vector<std::string> bound_here;
    if (unify_tuple(atom, t, s, bound_here)) {
      if (!match_rec(model, positives, sources, idx + 1, checks, s, fn))
        return false;
    }
    for (const std::string& v : bound_here) s.erase(v);
  }
  return true;
}

void for_each_match_sources(
    const HerbrandModel& model, const std::vector<Literal>& body,
    const std::map<size_t, const TupleSet*>& overrides, const Substitution& base,
    const std::function<bool(const Substitution&)>& fn) {
  std::vector<const Literal*> positives, checks;
  std::vector<const TupleSet*> sources;
  for (size_t i = 0; i < body.size(); ++i) {
    const Literal& l = body[i];
    if (l.positive && !l.atom.is_builtin()) {
      positives.push_back(&l);
      auto ov = overrides.find(i);
      sources.push_back(ov != overrides.end() ? ov->second
                                              : model.relation(l.atom.predicate));
    } else {
      checks.push_back(&l);
    }
  }
  Substitution s = base;
  match_rec(model, positives, sources, 0, checks, s, fn);
}

}  // namespace

void for_each_match(const HerbrandModel& model, const std::vector<Literal>& body,
                    const Substitution& base,
                    const std::function<bool(const Substitution&)>& fn) {
  for_each_match_sources(model, body, {}, base, fn);
}

bool eval_formula(const HerbrandModel& model, const ConditionFormula& f,
                  const Substitution& s) {
  switch (f.kind) {
    case ConditionFormula::Kind::Lit:
      return check_literal(model, f.lit, s);
    case ConditionFormula::Kind::And:
      return std::all_of(f.children.begin(), f.children.end(),
                         [&](const auto& c) { return eval_formula(model, c, s); });
    case ConditionFormula::Kind::Or:
      return std::any_of(f.children.begin(), f.children.end(),
                         [&](const auto& c) { return eval_formula(model, c, s); });
  }
  return false;
}

namespace {

void top_level_literals(const ConditionFormula& f, std::vector<Literal>& out) {
  if (f.kind == ConditionFormula::Kind::Lit) { out.push_back(f.lit); return; }
  if (f.kind == ConditionFormula::Kind::Or) return;  // handled by eval_formula
  for (const auto& c : f.children) top_level_literals(c, out);
}

}  // namespace

void for_each_formula_match(
    const HerbrandModel& model, const ConditionFormula& cond,
    const std::vector<std::string>& required_vars,
    const std::set<std::string>& domain,
    const std::function<bool(const Substitution&)>& fn) {
  std::vector<Literal> top;
  top_level_literals(cond, top);
  // Join only the positive conjunctive part; everything else (negation,
  // builtins, disjunctions) is re-checked on the candidate as a whole.
  std::vector<Literal> binders;
  for (const Literal& l : top)
    if (l.positive && !l.atom.is_builtin()) binders.push_back(l);

  for_each_match(model, binders, {}, [&](const Substitution& s0) {
    std::vector<std::string> missing;
    for (const std::string& v : required_vars)
      if (!s0.count(v)) missing.push_back(v);

    // Enumerate leftover variables (bound only under a disjunction, if at
    // all) over the active domain.
    Substitution s = s0;
    std::function<bool(size_t)> enumerate = [&](size_t k) -> bool {
      if (k == missing.size()) {
        if (eval_formula(model, cond, s)) return fn(s);
        return true;
      }
      for (const std::string& c : domain) {
        s[missing[k]] = c;
        if (!enumerate(k + 1)) return false;
      }
      s.erase(missing[k]);
      return true;
    };
    return enumerate(0);
  });
}

HerbrandModel evaluate(const ProgramStructure& program,
                       const ExternalDatabase& db) {
  Stratification st = stratify(program);

  HerbrandModel model;
  for (const Atom& f : db.facts) {
    Tuple t;
    for (const Term& a : f.args) t.push_back(a.name);
    model.insert(f.predicate, std::move(t));
  }

  auto head_tuple = [](const Atom& head, const Substitution& s) {
    Tuple t;
    t.reserve(head.args.size());
    for (const Term& a : head.args)
      t.push_back(a.is_var() ? s.at(a.name) : a.name);
    return t;
  };

  for (const auto& stratum : st.strata) {
    std::set<std::string> here(stratum.begin(), stratum.end());
    std::vector<const InternalClause*> clauses;
    for (const InternalClause& ic : program.internal_part)
      if (here.count(ic.head.predicate)) clauses.push_back(&ic);

    // Seed round: full evaluation of every clause of the stratum.
    std::map<std::string, TupleSet> delta;
    for (const InternalClause* ic : clauses)
      for_each_match(model, ic->body, {}, [&](const Substitution& s) {
        Tuple t = head_tuple(ic->head, s);
        if (model.insert(ic->head.predicate, t))
          delta[ic->head.predicate].insert(std::move(t));
        return true;
      });

    // Semi-naive rounds: re-derive only through a delta occurrence.
    while (!delta.empty()) {
      std::map<std::string, TupleSet> next;
      for (const InternalClause* ic : clauses) {
        for (size_t i = 0; i < ic->body.size(); ++i) {
          const Literal& l = ic->body[i];
          if (!l.positive || l.atom.is_builtin()) continue;
          auto dit = delta.find(l.atom.predicate);
          if (dit == delta.end() || !here.count(l.atom.predicate)) continue;
          for_each_match_sources(model, ic->body, {{i, &dit->second}}, {},
                                 [&](const Substitution& s) {
                                   Tuple t = head_tuple(ic->head, s);
                                   if (model.insert(ic->head.predicate, t))
                                     next[ic->head.predicate].insert(std::move(t));
                                   return true;
                                 });
        }
      }
      delta = std::move(next);
    }
  }
  return model;
}

ConstraintReport check_constraints(const HerbrandModel& model,
                                   const ProgramStructure& program) {
  ConstraintReport report;
  for (size_t i = 0; i < program.constraints.size(); ++i) {
    for_each_match(model, program.constraints[i].body, {},
                   [&](const Substitution& s) {
                     report.violations.push_back(
                         {static_cast<int>(i), s});
                     return true;
                   });
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace plci
