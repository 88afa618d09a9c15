#pragma once

// Internal JSON helpers shared by the file-format translation units.

#include <json.hpp>

#include <string>

#include "dcopkit/errors.hpp"
#include "dcopkit/model.hpp"
#include "dcopkit/netsim.hpp"

namespace dcopkit::json_codec {

using Json = nlohmann::ordered_json;

std::string child(const std::string& path, const std::string& key);
std::string child(const std::string& path, std::size_t index);

const Json& require(const Json& obj, const std::string& key, const std::string& path);
void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed,
                    const std::string& path);
std::int64_t integer(const Json& j, const std::string& path);
Cost cost(const Json& j, const std::string& path);
Json cost_json(const Cost& c);

Json assignment_json(const Assignment& a);
Assignment assignment(const Json& j, const std::string& path);
// {"<variable>": value}, for human-facing reports.
Json assignment_object(const Assignment& a);

Json constraint_json(const Constraint& c);
Problem problem(const Json& j, const std::string& path);
Json problem_json(const Problem& p);

Json message_json(const Message& m);
Json status_json(const TerminalStatus& s);

}  // namespace dcopkit::json_codec
