#include "plci/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "plci/bench.hpp"
#include "plci/fragment.hpp"
#include "plci/json_io.hpp"
#include "plci/parser.hpp"

namespace plci {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::chrono::milliseconds parse_duration(const std::string& text) {
  size_t pos = 0;
  while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
    ++pos;
  if (pos == 0) throw InputError("malformed duration: " + text);
  double value = std::stod(text.substr(0, pos));
  std::string unit = text.substr(pos);
  double ms;
  if (unit.empty() || unit == "s") ms = value * 1000.0;
  else if (unit == "ms") ms = value;
  else if (unit == "m") ms = value * 60000.0;
  else throw InputError("unknown duration unit: " + unit);
  return std::chrono::milliseconds(static_cast<long>(ms));
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::istringstream is(text);
  std::string piece;
  while (std::getline(is, piece, ',')) {
    if (piece.empty()) continue;
    size_t dots = piece.find("..");
    if (dots == std::string::npos) {
      sizes.push_back(std::stoi(piece));
      continue;
    }
    int lo = std::stoi(piece.substr(0, dots));
    std::string rest = piece.substr(dots + 2);
    int step = 1;
    if (size_t colon = rest.find(':'); colon != std::string::npos) {
      step = std::stoi(rest.substr(colon + 1));
      rest.erase(colon);
    }
    int hi = std::stoi(rest);
    if (step <= 0 || lo <= 0 || hi < lo)
      throw InputError("malformed size range: " + piece);
    for (int s = lo; s <= hi; s += step) sizes.push_back(s);
  }
  if (sizes.empty()) throw InputError("empty size list");
  for (int s : sizes)
    if (s <= 0) throw InputError("sizes must be positive");
  return sizes;
}

struct Options {
  std::string program_path, database_path, params_path;
  std::vector<std::string> queries;
  std::string queries_path;
  std::string format = "text";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string timeout;
  std::string out_path;
  bool all_groundings = false;
  int guard = 22;
  std::string assertion;
  int max_obs = 3;
  bool verbose = false;
  // bench
  std::string sizes = "5..100:5";
  int graphs_per_size = 5;
  int queries_per_size = 10;
  std::string mode = "dsep";
};

void add_common(CLI::App* cmd, Options& opt, bool with_queries) {
  cmd->add_option("--program", opt.program_path, "program structure (.plp)");
  cmd->add_option("--database", opt.database_path, "external database (.db)");
  cmd->add_option("--params", opt.params_path, "parameter file (.params)");
  if (with_queries) {
    cmd->add_option("--query", opt.queries,
                    "query indep(A, B, [Z...]); repeatable");
    cmd->add_option("--queries", opt.queries_path, "file with one query per line");
  }
  cmd->add_option("--format", opt.format, "text|json|csv|dot");
  cmd->add_option("--seed", opt.seed, "RNG seed")->each([&](const std::string&) {
    opt.seed_given = true;
  });
  cmd->add_option("--timeout", opt.timeout, "per-query timeout, e.g. 10s or 500ms");
  cmd->add_option("--out", opt.out_path, "write output to a file");
  cmd->add_flag("--all-groundings", opt.all_groundings,
                "include every |domain|^arity ground variable");
  cmd->add_option("--guard", opt.guard, "oracle guard: max error terms");
  cmd->add_option("--assert", opt.assertion,
                  "expected verdict; mismatches exit with code 1");
  cmd->add_option("--max-obs", opt.max_obs, "sweep cap on |Z|");
  cmd->add_flag("-v,--verbose", opt.verbose, "diagnostics on stderr");
}

std::uint64_t effective_seed(const Options& opt) {
  if (opt.seed_given) return opt.seed;
  if (const char* env = std::getenv("PLCI_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw InputError("malformed PLCI_SEED value");
    }
  }
  return 1;
}

Deadline make_deadline(const Options& opt) {
  if (opt.timeout.empty()) return Deadline::none();
  return Deadline::after(parse_duration(opt.timeout));
}

struct Inputs {
  ProgramStructure program;
  ExternalDatabase db;
  ParameterAssignment params;
  Grounding grounding;
};

Inputs load_inputs(const Options& opt, bool with_params) {
  if (opt.program_path.empty()) throw InputError("--program is required");
  Inputs in;
  in.program = parse_program(read_file(opt.program_path));
  std::string db_text =
      opt.database_path.empty() ? "" : read_file(opt.database_path);
  in.db = parse_database(db_text, in.program);
  ParamsFile pf;
  if (!opt.params_path.empty()) pf = parse_params(read_file(opt.params_path));
  in.params = resolve_parameters(in.program, pf);
  GroundingOptions gopts;
  gopts.all_groundings = opt.all_groundings;
  in.grounding = ground(in.program, in.db,
                        with_params ? std::optional(in.params) : std::nullopt,
                        gopts);
  return in;
}

std::vector<std::string> collect_queries(const Options& opt) {
  std::vector<std::string> queries = opt.queries;
  if (!opt.queries_path.empty()) {
    std::istringstream is(read_file(opt.queries_path));
    std::string line;
    while (std::getline(is, line)) {
      if (auto pos = line.find('%'); pos != std::string::npos) line.erase(pos);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      queries.push_back(line);
    }
  }
  if (queries.empty())
    throw InputError("no query given; use --query or --queries");
  return queries;
}

NodeId resolve_node(const Grounding& grounding, const Atom& atom) {
  auto id = grounding.graph.find(GroundAtom::from_atom(atom));
  if (!id)
    throw InputError("node not in graph: " + to_string(atom) +
                     " (with sort pruning only clause-supported variables "
                     "exist; --all-groundings includes the rest)");
  return *id;
}

void require_acyclic(const Grounding& grounding) {
  if (grounding.acyclicity.ok) return;
  std::string cyc;
  for (size_t i = 0; i < grounding.acyclicity.cycle.size(); ++i) {
    if (i) cyc += " -> ";
    cyc += grounding.graph.nodes[grounding.acyclicity.cycle[i]].str();
  }
  throw InputError("ground graph is cyclic: " + cyc);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string witness_text(const GroundGraph& graph, const DSepVerdict& v) {
  std::string s;
  for (size_t i = 0; i < v.walk_nodes.size(); ++i) {
    s += graph.nodes[v.walk_nodes[i]].str();
    if (i < v.walk_forward.size()) s += v.walk_forward[i] ? " -> " : " <- ";
  }
  return s;
}

long micros_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

// --- subcommand bodies ----------------------------------------------------

int cmd_model(const Options& opt, std::ostream& out) {
  Inputs in = load_inputs(opt, false);
  if (opt.format == "json") {
    out << model_json(in.grounding.model).dump(2) << "\n";
  } else {
    for (const Atom& a : in.grounding.model.atoms()) out << to_string(a) << "\n";
  }
  return 0;
}

int cmd_check(const Options& opt, std::ostream& out) {
  Inputs in = load_inputs(opt, false);
  ConstraintReport report = check_constraints(in.grounding.model, in.program);
  if (opt.format == "json") {
    out << constraint_report_json(report, in.program).dump(2) << "\n";
  } else if (report.ok) {
    out << "ok: database satisfies all " << in.program.constraints.size()
        << " constraint(s)\n";
  } else {
    for (const ConstraintViolation& v : report.violations) {
      out << "violation: " << to_string(in.program.constraints[v.constraint_index])
          << " with {";
      bool first = true;
      for (const auto& [var, val] : v.subst) {
        if (!first) out << ", ";
        out << var << " = " << val;
        first = false;
      }
      out << "}\n";
    }
  }
  return report.ok ? 0 : 1;
}

int cmd_ground_graph(const Options& opt, std::ostream& out) {
  Inputs in = load_inputs(opt, false);
  const GroundGraph& g = in.grounding.graph;
  if (opt.format == "dot") {
    out << emit_dot(g);
  } else if (opt.format == "json") {
    Json j = graph_json(g);
    j["acyclic"] = in.grounding.acyclicity.ok;
    out << j.dump(2) << "\n";
  } else {
    out << "nodes " << g.nodes.size() << "\nedges " << g.edge_count() << "\n";
    for (const GroundAtom& n : g.nodes) out << n.str() << "\n";
    for (const auto& [edge, clauses] : g.provenance) {
      out << g.nodes[edge.first].str() << " -> " << g.nodes[edge.second].str()
          << "  [";
      bool first = true;
      for (int id : clauses) {
        if (!first) out << ",";
        out << id;
        first = false;
      }
      out << "]\n";
    }
    if (!in.grounding.acyclicity.ok) {
      out << "cyclic: ";
      for (size_t i = 0; i < in.grounding.acyclicity.cycle.size(); ++i) {
        if (i) out << " -> ";
        out << g.nodes[in.grounding.acyclicity.cycle[i]].str();
      }
      out << "\n";
    }
  }
  return 0;
}

int cmd_equations(const Options& opt, std::ostream& out) {
  Inputs in = load_inputs(opt, true);
  require_acyclic(in.grounding);
  const GroundGraph& g = in.grounding.graph;
  const EquationSystem& eqs = in.grounding.eqs;
  if (opt.format == "json") {
    out << equations_json(g, eqs).dump(2) << "\n";
    return 0;
  }
  for (const GroundEquation& eq : eqs.equations) {
    out << g.nodes[eq.target].str() << " := ";
    if (eq.disjuncts.empty()) {
      out << "false\n";
      continue;
    }
    for (size_t i = 0; i < eq.disjuncts.size(); ++i) {
      if (i) out << " | ";
      const Disjunct& d = eq.disjuncts[i];
      for (const auto& [node, positive] : d.literals)
        out << (positive ? "" : "\\+") << g.nodes[node].str() << " & ";
      const ErrorTerm& u = eqs.error_terms[d.term];
      out << "u(" << u.clause_id << ", {";
      bool first = true;
      for (const auto& [var, val] : u.subst) {
        if (!first) out << ", ";
        out << var << " = " << val;
        first = false;
      }
      out << "})[" << rat_to_fraction(u.prob) << "]";
    }
    out << "\n";
  }
  return 0;
}

int cmd_dsep(const Options& opt, std::ostream& out) {
  Inputs in = load_inputs(opt, false);
  require_acyclic(in.grounding);
  std::vector<std::string> query_texts = collect_queries(opt);
  Deadline deadline = make_deadline(opt);

  Json results = Json::array();
  bool assert_failed = false;
  if (opt.format == "csv") out << "query,verdict,micros\n";
  for (const std::string& text : query_texts) {
    CIQuery q = parse_query(text, in.program);
    NodeId a = resolve_node(in.grounding, q.a);
    NodeId b = resolve_node(in.grounding, q.b);
    std::vector<NodeId> obs;
    for (const Atom& z : q.observations)
      obs.push_back(resolve_node(in.grounding, z));
    auto t0 = std::chrono::steady_clock::now();
    DSepVerdict v = d_connected(in.grounding.graph, a, b, obs, deadline);
    long us = micros_since(t0);
    if (!opt.assertion.empty()) {
      bool expected_separated = opt.assertion == "separated";
      if (v.separated != expected_separated) assert_failed = true;
    }
    if (opt.format == "json") {
      Json j = dsep_verdict_json(in.grounding.graph, v, us);
      j["query"] = to_string(q);
      results.push_back(std::move(j));
    } else if (opt.format == "csv") {
      out << csv_quote(to_string(q)) << ','
          << (v.separated ? "separated" : "connected") << ',' << us << '\n';
    } else {
      out << to_string(q) << ": " << (v.separated ? "separated" : "connected");
      if (!v.separated)
        out << "  [" << witness_text(in.grounding.graph, v) << "]";
      out << "  (" << us << " us)\n";
    }
  }
  if (opt.format == "json")
    out << (results.size() == 1 ? results[0] : results).dump(2) << "\n";
  return assert_failed ? 1 : 0;
}

int cmd_ci(const Options& opt, std::ostream& out) {
  Inputs in = load_inputs(opt, true);
  require_acyclic(in.grounding);
  std::vector<std::string> query_texts = collect_queries(opt);
  OracleLimits limits;
  limits.guard = opt.guard;
  limits.deadline = make_deadline(opt);

  Json results = Json::array();
  bool assert_failed = false;
  if (opt.format == "csv") out << "query,verdict,skipped_contexts,micros\n";
  for (const std::string& text : query_texts) {
    CIQuery q = parse_query(text, in.program);
    NodeId a = resolve_node(in.grounding, q.a);
    NodeId b = resolve_node(in.grounding, q.b);
    std::vector<NodeId> obs;
    for (const Atom& z : q.observations)
      obs.push_back(resolve_node(in.grounding, z));
    auto t0 = std::chrono::steady_clock::now();
    CIVerdict v = ci_check(in.grounding.eqs, a, b, obs, limits);
    long us = micros_since(t0);
    if (!opt.assertion.empty()) {
      bool expected_indep = opt.assertion == "independent";
      if (v.independent != expected_indep) assert_failed = true;
    }
    if (opt.format == "json") {
      Json j = ci_verdict_json(in.grounding.graph, v, us);
      j["query"] = to_string(q);
      results.push_back(std::move(j));
    } else if (opt.format == "csv") {
      out << csv_quote(to_string(q)) << ','
          << (v.independent ? "independent" : "dependent") << ','
          << v.skipped_contexts << ',' << us << '\n';
    } else {
      out << to_string(q) << ": "
          << (v.independent ? "independent" : "dependent");
      if (v.counterexample) {
        const auto& ce = *v.counterexample;
        out << "  [A=" << ce.a_value << ", B=" << ce.b_value
            << ": " << rat_to_fraction(ce.lhs) << " ("
            << rat_approx(ce.lhs) << ") != " << rat_to_fraction(ce.rhs)
            << " (" << rat_approx(ce.rhs) << ")]";
      }
      if (v.skipped_contexts)
        out << "  (skipped " << v.skipped_contexts << " zero-probability contexts)";
      out << "  (" << us << " us)\n";
    }
  }
  if (opt.format == "json")
    out << (results.size() == 1 ? results[0] : results).dump(2) << "\n";
  return assert_failed ? 1 : 0;
}

int cmd_fragment(const Options& opt, std::ostream& out) {
  Inputs in = load_inputs(opt, true);
  require_acyclic(in.grounding);
  OracleLimits limits;
  limits.guard = opt.guard;
  limits.deadline = make_deadline(opt);
  FragmentReport report =
      fragment_report(in.program, in.grounding, in.params, limits);
  if (opt.format == "json") {
    out << fragment_report_json(in.grounding.graph, report).dump(2) << "\n";
  } else {
    auto flag = [&](const char* name, bool ok) {
      out << name << ": " << (ok ? "yes" : "no") << "\n";
    };
    flag("positive", report.positive);
    if (report.offending_clause)
      out << "  negative cause in clause " << *report.offending_clause << "\n";
    flag("singly_connected", report.singly_connected);
    if (!report.cycle_witness.empty()) {
      out << "  undirected cycle:";
      for (NodeId v : report.cycle_witness)
        out << " " << in.grounding.graph.nodes[v].str();
      out << "\n";
    }
    flag("sources_are_facts", report.sources_fact_grounded);
    if (report.offending_source)
      out << "  source without fact disjunct: "
          << in.grounding.graph.nodes[*report.offending_source].str() << "\n";
    flag("params_interior", report.params_in_interior);
    if (report.offending_param)
      out << "  clause " << *report.offending_param
          << " has no probability strictly inside (0,1)\n";
    flag("complete_oracle", report.complete_oracle);
    out << "properness: "
        << (report.properness.status == Properness::Proper     ? "proper"
            : report.properness.status == Properness::Improper ? "improper"
                                                               : "unchecked")
        << "\n";
  }
  return report.complete_oracle ? 0 : 1;
}

int cmd_sweep(const Options& opt, std::ostream& out, bool faithfulness) {
  Inputs in = load_inputs(opt, true);
  require_acyclic(in.grounding);
  SweepBudget budget;
  budget.max_obs = opt.max_obs;
  budget.limits.guard = opt.guard;
  budget.limits.deadline = make_deadline(opt);
  SweepReport report = faithfulness ? faithfulness_sweep(in.grounding, budget)
                                    : soundness_sweep(in.grounding, budget);
  if (opt.format == "json") {
    out << sweep_report_json(in.grounding.graph, report, faithfulness).dump(2)
        << "\n";
  } else {
    out << (faithfulness ? "faithfulness" : "soundness") << " sweep: "
        << report.triples << " triples, " << report.separated
        << " d-separated, " << report.violations.size() << " violation(s)\n";
    for (const SweepViolation& v : report.violations) {
      out << "  " << in.grounding.graph.nodes[v.a].str() << " vs "
          << in.grounding.graph.nodes[v.b].str() << " given {";
      for (size_t i = 0; i < v.z.size(); ++i) {
        if (i) out << ", ";
        out << in.grounding.graph.nodes[v.z[i]].str();
      }
      out << "}: " << (v.d_separated ? "d-separated but dependent"
                                     : "d-connected but independent")
          << "\n";
    }
  }
  return report.violations.empty() ? 0 : 1;
}

int cmd_bench(const Options& opt, std::ostream& out) {
  BenchConfig cfg;
  cfg.sizes = parse_sizes(opt.sizes);
  cfg.graphs_per_size = opt.graphs_per_size;
  cfg.queries_per_size = opt.queries_per_size;
  cfg.seed = effective_seed(opt);
  cfg.guard = opt.guard;
  if (!opt.timeout.empty()) cfg.timeout = parse_duration(opt.timeout);
  if (opt.mode == "dsep") cfg.mode = BenchMode::Dsep;
  else if (opt.mode == "oracle") cfg.mode = BenchMode::Oracle;
  else if (opt.mode == "both") cfg.mode = BenchMode::Both;
  else throw InputError("unknown bench mode: " + opt.mode);

  BenchResult result = run_bench(cfg);
  if (opt.format == "json") {
    out << bench_result_json(result).dump(2) << "\n";
  } else {
    // records table, blank line, summary table
    out << records_csv(result) << "\n" << summaries_csv(result);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"conditional-independence queries on probabilistic logic "
               "program structures"};
  app.name("plci");
  app.require_subcommand(1);

  Options opt;
  CLI::App* c_model = app.add_subcommand("model", "print the Herbrand model E^I");
  CLI::App* c_check = app.add_subcommand("check", "check integrity constraints");
  CLI::App* c_graph = app.add_subcommand("ground-graph", "print the ground graph");
  CLI::App* c_eqs = app.add_subcommand("equations", "print the equation system");
  CLI::App* c_dsep = app.add_subcommand("dsep", "answer queries by d-separation");
  CLI::App* c_ci = app.add_subcommand("ci", "answer queries by exact inference");
  CLI::App* c_frag =
      app.add_subcommand("fragment", "completeness-fragment membership");
  CLI::App* c_sound =
      app.add_subcommand("sweep-soundness", "d-separated implies independent");
  CLI::App* c_faith =
      app.add_subcommand("sweep-faithfulness", "d-connected implies dependent");
  CLI::App* c_bench = app.add_subcommand("bench", "timing benchmark");

  for (CLI::App* cmd : {c_model, c_check, c_graph, c_eqs, c_frag, c_sound, c_faith})
    add_common(cmd, opt, false);
  for (CLI::App* cmd : {c_dsep, c_ci}) add_common(cmd, opt, true);
  add_common(c_bench, opt, false);
  c_bench->add_option("--sizes", opt.sizes, "e.g. 5,10 or 5..100:5");
  c_bench->add_option("--graphs", opt.graphs_per_size, "graphs per size");
  c_bench->add_option("--queries-per-size", opt.queries_per_size,
                      "query pairs per size");
  c_bench->add_option("--mode", opt.mode, "dsep|oracle|both");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  long groundings_before = grounding_counter();
  std::ofstream out_file;
  std::ostream* sink = &out;
  int code = 2;
  try {
    if (!opt.out_path.empty()) {
      out_file.open(opt.out_path, std::ios::binary);
      if (!out_file) throw InputError("cannot open output file: " + opt.out_path);
      sink = &out_file;
    }
    if (c_model->parsed()) code = cmd_model(opt, *sink);
    else if (c_check->parsed()) code = cmd_check(opt, *sink);
    else if (c_graph->parsed()) code = cmd_ground_graph(opt, *sink);
    else if (c_eqs->parsed()) code = cmd_equations(opt, *sink);
    else if (c_dsep->parsed()) code = cmd_dsep(opt, *sink);
    else if (c_ci->parsed()) code = cmd_ci(opt, *sink);
    else if (c_frag->parsed()) code = cmd_fragment(opt, *sink);
    else if (c_sound->parsed()) code = cmd_sweep(opt, *sink, false);
    else if (c_faith->parsed()) code = cmd_sweep(opt, *sink, true);
    else if (c_bench->parsed()) code = cmd_bench(opt, *sink);
  } catch (const GuardExceededError& e) {
    err << "error: " << e.what() << " (raise --guard to allow it)\n";
    return 2;
  } catch (const TimeoutError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (opt.verbose)
    err << "groundings: " << grounding_counter() - groundings_before << "\n";
  return code;
}

}  // namespace plci
