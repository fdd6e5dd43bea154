// Parsing of .plp program files, .db fact files, .params files and
// independence queries. Parsing is a pure function of the input text;
// clause ids are assigned in file order, so identical input yields
// structurally identical output.
#pragma once

#include <stdexcept>
#include <string>

#include "plci/ast.hpp"

namespace plci {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at line " + std::to_string(line_) +
                           ", column " + std::to_string(col_)),
        line(line_),
        column(col_) {}
};

ProgramStructure parse_program(const std::string& text);

// Database and query syntax need the program's vocabulary for validation
// (external-ness, arity, random-ness of query atoms).
ExternalDatabase parse_database(const std::string& text,
                                const ProgramStructure& program);

CIQuery parse_query(const std::string& text, const ProgramStructure& program);

// .params file: lines of `<ordinal> = <decimal>` plus an optional
// `default = <decimal>`. Explicit entries override probabilities written
// in the program text; the default fills only unspecified ones.
struct ParamsFile {
  std::map<int, BigRat> entries;
  std::optional<BigRat> def;
};

ParamsFile parse_params(const std::string& text);

// Merge program probabilities with a params file into a per-clause map.
// Clauses that stay without a probability are simply absent; grounding
// errors out if such a clause is actually instantiated.
ParameterAssignment resolve_parameters(const ProgramStructure& program,
                                       const ParamsFile& file);
ParameterAssignment resolve_parameters(const ProgramStructure& program);

}  // namespace plci
