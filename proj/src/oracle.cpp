#include "plci/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace plci {

namespace {

// Evaluation order of the equations, derived from the disjunct literals.
std::vector<NodeId> topo_order(const EquationSystem& eqs) {
  size_t n = eqs.equations.size();
  std::vector<std::vector<NodeId>> children(n);
  std::vector<int> indeg(n, 0);
  for (size_t v = 0; v < n; ++v) {
    std::set<NodeId> parents;
    for (const Disjunct& d : eqs.equations[v].disjuncts)
      for (const auto& [p, _] : d.literals) parents.insert(p);
    for (NodeId p : parents) {
      children[p].push_back(static_cast<NodeId>(v));
      ++indeg[v];
    }
  }
  std::deque<NodeId> queue;
  for (size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(static_cast<NodeId>(v));
  std::vector<NodeId> order;
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (NodeId c : children[v])
      if (--indeg[c] == 0) queue.push_back(c);
  }
  if (order.size() != n)
    throw ValidationError("equation system is cyclic");
  return order;
}

void eval_equations(const EquationSystem& eqs, const std::vector<NodeId>& order,
                    const ErrorValuation& v, std::vector<char>& values) {
  for (NodeId node : order) {
    bool val = false;
    for (const Disjunct& d : eqs.equations[node].disjuncts) {
      if (!v[d.term]) continue;
      bool ok = true;
      for (const auto& [lit, sign] : d.literals)
        if (static_cast<bool>(values[lit]) != sign) { ok = false; break; }
      if (ok) { val = true; break; }
    }
    values[node] = val;
  }
}

}  // namespace

std::vector<bool> solve_valuation(const EquationSystem& eqs,
                                  const ErrorValuation& v) {
  if (v.size() != eqs.error_terms.size())
    throw std::invalid_argument("valuation size mismatch");
  std::vector<char> values(eqs.equations.size(), 0);
  eval_equations(eqs, topo_order(eqs), v, values);
  return {values.begin(), values.end()};
}

RawTable raw_joint(const EquationSystem& eqs, const std::vector<NodeId>& vars,
                   const OracleLimits& limits) {
  size_t n_terms = eqs.error_terms.size();
  if (static_cast<long>(n_terms) > limits.guard)
    throw GuardExceededError(static_cast<long>(n_terms));
  if (vars.size() > 24)
    throw GuardExceededError(static_cast<long>(vars.size()));
  for (NodeId v : vars)
    if (v < 0 || static_cast<size_t>(v) >= eqs.equations.size())
      throw std::out_of_range("node not in equation system");

  RawTable table;
  table.vars = vars;
  table.num.assign(size_t{1} << vars.size(), BigInt(0));
  table.den = 1;

  // Common-denominator weights: choosing u_i true contributes num(p_i),
  // false contributes den(p_i) - num(p_i); the leaf weight is the product.
  std::vector<BigInt> w_true(n_terms), w_false(n_terms);
  for (size_t i = 0; i < n_terms; ++i) {
    const BigRat& p = eqs.error_terms[i].prob;
    w_true[i] = numerator(p);
    w_false[i] = denominator(p) - numerator(p);
    table.den *= denominator(p);
  }

  std::vector<NodeId> order = topo_order(eqs);
  std::vector<char> values(eqs.equations.size(), 0);
  ErrorValuation val(n_terms, false);
  std::vector<BigInt> product(n_terms + 1);
  product[0] = 1;
  long leaves = 0;

  std::function<void(size_t)> rec = [&](size_t d) {
    if (d == n_terms) {
      if ((++leaves & 0x1fff) == 0) limits.deadline.check();
      eval_equations(eqs, order, val, values);
      size_t mask = 0;
      for (size_t i = 0; i < table.vars.size(); ++i)
        if (values[table.vars[i]]) mask |= size_t{1} << i;
      table.num[mask] += product[d];
      return;
    }
    // Zero-weight branches (parameters 0 or 1) contribute nothing.
    if (w_false[d] != 0) {
      product[d + 1] = product[d] * w_false[d];
      val[d] = false;
      rec(d + 1);
    }
    if (w_true[d] != 0) {
      product[d + 1] = product[d] * w_true[d];
      val[d] = true;
      rec(d + 1);
      val[d] = false;
    }
  };
  rec(0);
  return table;
}

JointTable joint(const EquationSystem& eqs, const std::vector<NodeId>& vars,
                 const OracleLimits& limits) {
  RawTable raw = raw_joint(eqs, vars, limits);
  JointTable out;
  out.vars = raw.vars;
  out.probs.reserve(raw.num.size());
  for (const BigInt& n : raw.num) out.probs.emplace_back(BigRat(n, raw.den));
  return out;
}

CIVerdict ci_from_table(const RawTable& table, NodeId a, NodeId b,
                        const std::vector<NodeId>& obs) {
  if (a == b) throw std::invalid_argument("query endpoints must differ");
  std::vector<NodeId> zset(obs);
  std::sort(zset.begin(), zset.end());
  zset.erase(std::unique(zset.begin(), zset.end()), zset.end());

  auto pos_of = [&](NodeId v) -> size_t {
    auto it = std::find(table.vars.begin(), table.vars.end(), v);
    if (it == table.vars.end())
      throw std::invalid_argument("variable not covered by the table");
    return static_cast<size_t>(it - table.vars.begin());
  };
  size_t pos_a = pos_of(a), pos_b = pos_of(b);
  std::vector<size_t> pos_z;
  for (NodeId z : zset) pos_z.push_back(pos_of(z));

  // Project the table onto (z..., a, b).
  size_t zn = zset.size();
  std::vector<BigInt> sums(size_t{1} << (zn + 2), BigInt(0));
  for (size_t mask = 0; mask < table.num.size(); ++mask) {
    if (table.num[mask] == 0) continue;
    size_t key = 0;
    for (size_t i = 0; i < zn; ++i)
      if (mask & (size_t{1} << pos_z[i])) key |= size_t{1} << i;
    if (mask & (size_t{1} << pos_a)) key |= size_t{1} << zn;
    if (mask & (size_t{1} << pos_b)) key |= size_t{1} << (zn + 1);
    sums[key] += table.num[mask];
  }

  CIVerdict verdict;
  for (size_t zmask = 0; zmask < (size_t{1} << zn); ++zmask) {
    BigInt n_z = 0, n_a = 0, n_b = 0;
    for (int av = 0; av < 2; ++av)
      for (int bv = 0; bv < 2; ++bv) {
        const BigInt& s =
            sums[zmask | (size_t(av) << zn) | (size_t(bv) << (zn + 1))];
        n_z += s;
        if (av) n_a += s;
        if (bv) n_b += s;
      }
    if (n_z == 0) {  // conditional undefined at this observation value
      ++verdict.skipped_contexts;
      continue;
    }
    for (int av = 1; av >= 0 && verdict.independent; --av)
      for (int bv = 1; bv >= 0 && verdict.independent; --bv) {
        const BigInt& n_ab =
            sums[zmask | (size_t(av) << zn) | (size_t(bv) << (zn + 1))];
        BigInt ma = av ? n_a : n_z - n_a;
        BigInt mb = bv ? n_b : n_z - n_b;
        if (n_ab * n_z != ma * mb) {
          verdict.independent = false;
          CIVerdict::Counterexample ce;
          ce.a_value = av;
          ce.b_value = bv;
          for (size_t i = 0; i < zn; ++i)
            ce.z_assignment.emplace_back(zset[i],
                                         (zmask & (size_t{1} << i)) != 0);
          ce.lhs = BigRat(n_ab, n_z);
          ce.rhs = BigRat(ma * mb, n_z * n_z);
          verdict.counterexample = std::move(ce);
        }
      }
    if (!verdict.independent) break;
  }
  return verdict;
}

CIVerdict ci_check(const EquationSystem& eqs, NodeId a, NodeId b,
                   const std::vector<NodeId>& obs, const OracleLimits& limits) {
  if (a == b) throw std::invalid_argument("query endpoints must differ");
  std::vector<NodeId> vars{a, b};
  vars.insert(vars.end(), obs.begin(), obs.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return ci_from_table(raw_joint(eqs, vars, limits), a, b, obs);
}

bool positive_correlation_check(const EquationSystem& eqs, NodeId parent,
                                NodeId child, const OracleLimits& limits) {
  if (parent == child) throw std::invalid_argument("edge endpoints must differ");
  RawTable t = raw_joint(eqs, {parent, child}, limits);
  BigInt n_p = t.num[1] + t.num[3];   // parent true
  BigInt n_c = t.num[2] + t.num[3];   // child true
  const BigInt& n_pc = t.num[3];
  if (n_p == 0)
    throw std::domain_error("conditional undefined: parent has probability 0");
  // pi(c|p) > pi(c)  <=>  n_pc / n_p > n_c / den
  return n_pc * t.den > n_c * n_p;
}

Marginals node_marginals(const EquationSystem& eqs, const OracleLimits& limits) {
  size_t n_terms = eqs.error_terms.size();
  if (static_cast<long>(n_terms) > limits.guard)
    throw GuardExceededError(static_cast<long>(n_terms));

  Marginals m;
  m.num_true.assign(eqs.equations.size(), BigInt(0));
  m.den = 1;
  std::vector<BigInt> w_true(n_terms), w_false(n_terms);
  for (size_t i = 0; i < n_terms; ++i) {
    const BigRat& p = eqs.error_terms[i].prob;
    w_true[i] = numerator(p);
    w_false[i] = denominator(p) - numerator(p);
    m.den *= denominator(p);
  }
  std::vector<NodeId> order = topo_order(eqs);
  std::vector<char> values(eqs.equations.size(), 0);
  ErrorValuation val(n_terms, false);
  std::vector<BigInt> product(n_terms + 1);
  product[0] = 1;
  long leaves = 0;
  std::function<void(size_t)> rec = [&](size_t d) {
    if (d == n_terms) {
      if ((++leaves & 0x1fff) == 0) limits.deadline.check();
      eval_equations(eqs, order, val, values);
      for (size_t v = 0; v < values.size(); ++v)
        if (values[v]) m.num_true[v] += product[d];
      return;
    }
    if (w_false[d] != 0) {
      product[d + 1] = product[d] * w_false[d];
      val[d] = false;
      rec(d + 1);
    }
    if (w_true[d] != 0) {
      product[d + 1] = product[d] * w_true[d];
      val[d] = true;
      rec(d + 1);
      val[d] = false;
    }
  };
  rec(0);
  return m;
}

PropernessReport check_properness(const EquationSystem& eqs,
                                  const OracleLimits& limits) {
  PropernessReport report;
  Marginals m;
  try {
    m = node_marginals(eqs, limits);
  } catch (const GuardExceededError&) {
    return report;  // Unchecked
  }
  report.status = Properness::Proper;
  for (size_t v = 0; v < m.num_true.size(); ++v)
    if (m.num_true[v] == 0 || m.num_true[v] == m.den) {
      report.status = Properness::Improper;
      report.improper_node = static_cast<NodeId>(v);
      break;
    }
  return report;
}

std::vector<MarkovViolation> markov_violations(const EquationSystem& eqs,
                                               const GroundGraph& graph,
                                               const OracleLimits& limits) {
  size_t n = graph.nodes.size();
  std::vector<NodeId> all;
  for (size_t i = 0; i < n; ++i) all.push_back(static_cast<NodeId>(i));
  RawTable table = raw_joint(eqs, all, limits);

  // Descendant sets by forward BFS.
  std::vector<std::vector<char>> desc(n, std::vector<char>(n, 0));
  for (size_t x = 0; x < n; ++x) {
    std::deque<NodeId> queue{static_cast<NodeId>(x)};
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      for (NodeId c : graph.children[v])
        if (!desc[x][c]) {
          desc[x][c] = 1;
          queue.push_back(c);
        }
    }
  }

  std::vector<MarkovViolation> out;
  for (size_t x = 0; x < n; ++x) {
    const std::vector<NodeId>& parents = graph.parents[x];
    for (size_t y = 0; y < n; ++y) {
      if (y == x || desc[x][y]) continue;
      if (std::binary_search(parents.begin(), parents.end(),
                             static_cast<NodeId>(y)))
        continue;
      limits.deadline.check();
      CIVerdict v = ci_from_table(table, static_cast<NodeId>(x),
                                  static_cast<NodeId>(y), parents);
      if (!v.independent)
        out.push_back({static_cast<NodeId>(x), static_cast<NodeId>(y), parents});
    }
  }
  return out;
}

namespace {

SweepReport sweep(const Grounding& grounding, const SweepBudget& budget,
                  bool faithfulness) {
  if (!grounding.acyclicity.ok)
    throw ValidationError("ground graph is cyclic");
  if (!grounding.has_equations)
    throw ValidationError("sweep requires a grounded equation system");
  const GroundGraph& graph = grounding.graph;
  const EquationSystem& eqs = grounding.eqs;
  size_t n = graph.nodes.size();

  std::vector<NodeId> all;
  for (size_t i = 0; i < n; ++i) all.push_back(static_cast<NodeId>(i));
  RawTable table = raw_joint(eqs, all, budget.limits);

  SweepReport report;
  // Observation subsets in increasing size, lexicographic within a size.
  std::vector<NodeId> zs;
  std::function<void(size_t, int)> visit_subsets = [&](size_t start, int left) {
    budget.limits.deadline.check();
    ObservationContext ctx = make_observation_context(graph, zs);
    for (size_t a = 0; a < n; ++a) {
      for (size_t b = a + 1; b < n; ++b) {
        ++report.triples;
        bool sep = d_connected(graph, static_cast<NodeId>(a),
                               static_cast<NodeId>(b), ctx, Deadline::none())
                       .separated;
        if (sep) ++report.separated;
        if (sep != faithfulness) {
          // soundness probes separated triples, faithfulness connected ones
          CIVerdict v = ci_from_table(table, static_cast<NodeId>(a),
                                      static_cast<NodeId>(b), zs);
          bool violation = faithfulness ? v.independent : !v.independent;
          if (violation)
            report.violations.push_back({static_cast<NodeId>(a),
                                         static_cast<NodeId>(b), zs, sep,
                                         std::move(v)});
        }
      }
    }
    if (left == 0) return;
    for (size_t i = start; i < n; ++i) {
      zs.push_back(static_cast<NodeId>(i));
      visit_subsets(i + 1, left - 1);
      zs.pop_back();
    }
  };
  visit_subsets(0, budget.max_obs);
  return report;
}

}  // namespace

SweepReport soundness_sweep(const Grounding& grounding,
                            const SweepBudget& budget) {
  return sweep(grounding, budget, false);
}

SweepReport soundness_sweep(const ProgramStructure& program,
                            const ExternalDatabase& db,
                            const ParameterAssignment& params,
                            const SweepBudget& budget) {
  return sweep(ground(program, db, params), budget, false);
}

SweepReport faithfulness_sweep(const Grounding& grounding,
                               const SweepBudget& budget) {
  return sweep(grounding, budget, true);
}

SweepReport faithfulness_sweep(const ProgramStructure& program,
                               const ExternalDatabase& db,
                               const ParameterAssignment& params,
                               const SweepBudget& budget) {
  return sweep(ground(program, db, params), budget, true);
}

}  // namespace plci
