// JSON renderings of models, graphs, equation systems, verdicts and
// reports, shared by the CLI and the tests.
#pragma once

#include "json.hpp"  // vendored single-header nlohmann/json

#include "plci/bench.hpp"
#include "plci/fragment.hpp"
#include "plci/logic.hpp"
#include "plci/oracle.hpp"

namespace plci {

using Json = nlohmann::json;

Json model_json(const HerbrandModel& model);
Json constraint_report_json(const ConstraintReport& report,
                            const ProgramStructure& program);
Json graph_json(const GroundGraph& graph);
Json equations_json(const GroundGraph& graph, const EquationSystem& eqs);
Json dsep_verdict_json(const GroundGraph& graph, const DSepVerdict& verdict,
                       long micros);
Json ci_verdict_json(const GroundGraph& graph, const CIVerdict& verdict,
                     long micros);
Json fragment_report_json(const GroundGraph& graph, const FragmentReport& report);
Json sweep_report_json(const GroundGraph& graph, const SweepReport& report,
                       bool faithfulness);
Json bench_result_json(const BenchResult& result);

// Witness walk as alternating node names and direction tokens, e.g.
// ["season", "->", "rain", "->", "wet", "<-", "sprinkler"].
Json witness_json(const GroundGraph& graph, const DSepVerdict& verdict);

}  // namespace plci
