#pragma once

#include <string>
#include <string_view>

#include "dcopkit/model.hpp"
#include "dcopkit/netsim.hpp"

namespace dcopkit {

// Problem files are JSON documents:
//
//   {
//     "descriptor": "SODisCCOP",
//     "agents": [1, 2],
//     "variables": [{"id": 1, "domain": [1, 2]}, ...],
//     "constraints": [{"id": 1, "scope": [1, 2],
//                      "entries": [[[1, 1], 0], [[1, 2], "1/3"], ...],
//                      "visibility": "public" | {"private": [2]}}],
//     "ownership": {"variables": {"1": [1]}, "constraints": {"1": [2]}},
//     "privacy": {"domain_costs": [{"agent": 1, "value": 2, "cost": 5}],
//                 "entry_costs": [{"agent": 2, "constraint": 1,
//                                  "tuple": [1, 2], "cost": "3/2"}],
//                 "rewards": {"1": 10}},
//     "bounds": {"lower": 0, "upper": "inf"},
//     "outputs": "open" | {"1": [1, 2], "2": []}
//   }
//
// Costs are integers or strings holding "a/b" rationals or "inf". Floats are
// rejected. "constraints", "privacy", "bounds" and "outputs" are optional;
// unknown keys are rejected. Errors carry the JSON pointer of the offending
// element: SyntaxError, SchemaError, or ValidationError when the decoded
// problem fails validate_problem.
Problem parse_problem_file(std::string_view text);
std::string problem_to_json(const Problem& p);

// One message per line, then one terminal-status line.
std::string transcript_to_jsonl(const Transcript& t);
Transcript parse_transcript(std::string_view text);

}  // namespace dcopkit
