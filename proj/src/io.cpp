#include "dcopkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "dcopkit/nomenclature.hpp"
#include "json_codec.hpp"

namespace dcopkit {

namespace json_codec {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

namespace {

[[noreturn]] void schema(const std::string& what, const std::string& path) {
  throw SchemaError(what + " at " + (path.empty() ? "/" : path), path.empty() ? "/" : path);
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) schema("expected an array", path);
  return j;
}

const Json& object(const Json& j, const std::string& path) {
  if (!j.is_object()) schema("expected an object", path);
  return j;
}

std::int64_t key_integer(const std::string& key, const std::string& path) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), out);
  if (ec != std::errc{} || ptr != key.data() + key.size())
    schema("expected an integer key, got '" + key + "'", path);
  return out;
}

std::set<AgentId> agent_set(const Json& j, const std::string& path) {
  std::set<AgentId> out;
  const Json& arr = array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.insert(AgentId{integer(arr[i], child(path, i))});
  return out;
}

Json id_array(const auto& ids) {
  Json out = Json::array();
  for (const auto& id : ids) out.push_back(id.value);
  return out;
}

}  // namespace

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema("missing key '" + key + "'", path);
  return *it;
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed,
                    const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      schema("unknown key '" + key + "'", child(path, key));
  }
}

std::int64_t integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema("expected an integer", path);
  return j.get<std::int64_t>();
}

Cost cost(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Cost(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Cost::parse(j.get<std::string>());
    } catch (const DomainError& e) {
      schema(e.what(), path);
    }
  }
  schema("expected a cost (integer, \"a/b\" or \"inf\")", path);
}

Json cost_json(const Cost& c) { return c.str(); }

Json assignment_json(const Assignment& a) {
  Json out = Json::array();
  for (const auto& [x, v] : a) out.push_back(Json::array({x.value, v}));
  return out;
}

Json assignment_object(const Assignment& a) {
  Json out = Json::object();
  for (const auto& [x, v] : a) out[std::to_string(x.value)] = v;
  return out;
}

Assignment assignment(const Json& j, const std::string& path) {
  Assignment out;
  const Json& arr = array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = child(path, i);
    const Json& pair = array(arr[i], p);
    if (pair.size() != 2) schema("expected a [variable, value] pair", p);
    out[VariableId{integer(pair[0], child(p, 0))}] = integer(pair[1], child(p, 1));
  }
  return out;
}

Problem problem(const Json& j, const std::string& path) {
  object(j, path);
  reject_unknown(j,
                 {"descriptor", "agents", "variables", "constraints", "ownership", "privacy",
                  "bounds", "outputs"},
                 path);
  Problem p;

  {
    const std::string at = child(path, "descriptor");
    const Json& d = require(j, "descriptor", path);
    if (!d.is_string()) schema("expected a framework name", at);
    try {
      p.descriptor = decode(d.get<std::string>());
    } catch (const NameError& e) {
      schema(e.what(), at);
    }
  }

  {
    const std::string at = child(path, "agents");
    const Json& agents = array(require(j, "agents", path), at);
    for (std::size_t i = 0; i < agents.size(); ++i)
      p.agents.push_back(AgentId{integer(agents[i], child(at, i))});
    std::sort(p.agents.begin(), p.agents.end());
    if (std::adjacent_find(p.agents.begin(), p.agents.end()) != p.agents.end())
      schema("duplicate agent id", at);
  }
  auto agent_known = [&](AgentId a) {
    return std::binary_search(p.agents.begin(), p.agents.end(), a);
  };
  auto check_agent = [&](AgentId a, const std::string& at) {
    if (!agent_known(a)) schema("unknown agent " + std::to_string(a.value), at);
  };

  {
    const std::string at = child(path, "variables");
    const Json& vars = array(require(j, "variables", path), at);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const std::string vp = child(at, i);
      object(vars[i], vp);
      reject_unknown(vars[i], {"id", "domain"}, vp);
      Variable v;
      v.id = VariableId{integer(require(vars[i], "id", vp), child(vp, "id"))};
      const std::string dp = child(vp, "domain");
      const Json& dom = array(require(vars[i], "domain", vp), dp);
      for (std::size_t k = 0; k < dom.size(); ++k) v.domain.push_back(integer(dom[k], child(dp, k)));
      p.variables.push_back(std::move(v));
    }
    std::sort(p.variables.begin(), p.variables.end(),
              [](const Variable& a, const Variable& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < p.variables.size(); ++i)
      if (p.variables[i - 1].id == p.variables[i].id)
        schema("duplicate variable id " + std::to_string(p.variables[i].id.value), at);
  }

  if (auto it = j.find("constraints"); it != j.end()) {
    const std::string at = child(path, "constraints");
    const Json& cons = array(*it, at);
    for (std::size_t i = 0; i < cons.size(); ++i) {
      const std::string cp = child(at, i);
      object(cons[i], cp);
      reject_unknown(cons[i], {"id", "scope", "entries", "visibility"}, cp);
      Constraint c;
      c.id = ConstraintId{integer(require(cons[i], "id", cp), child(cp, "id"))};
      const std::string sp = child(cp, "scope");
      const Json& scope = array(require(cons[i], "scope", cp), sp);
      for (std::size_t k = 0; k < scope.size(); ++k) {
        const VariableId x{integer(scope[k], child(sp, k))};
        if (!p.find_variable(x)) schema("unknown variable " + std::to_string(x.value), child(sp, k));
        c.scope.push_back(x);
      }
      const std::string ep = child(cp, "entries");
      const Json& entries = array(require(cons[i], "entries", cp), ep);
      for (std::size_t k = 0; k < entries.size(); ++k) {
        const std::string entry_path = child(ep, k);
        const Json& entry = array(entries[k], entry_path);
        if (entry.size() != 2) schema("expected a [tuple, cost] pair", entry_path);
        const std::string tp = child(entry_path, 0);
        const Json& tuple_json = array(entry[0], tp);
        if (tuple_json.size() != c.scope.size())
          schema("tuple arity does not match the scope", tp);
        Tuple t;
        for (std::size_t m = 0; m < tuple_json.size(); ++m)
          t.push_back(integer(tuple_json[m], child(tp, m)));
        if (!c.table.emplace(std::move(t), cost(entry[1], child(entry_path, 1))).second)
          schema("duplicate tuple", tp);
      }
      if (auto vis = cons[i].find("visibility"); vis != cons[i].end()) {
        const std::string vp = child(cp, "visibility");
        if (vis->is_string() && vis->get<std::string>() == "public") {
          c.visibility = Visibility::public_();
        } else if (vis->is_object()) {
          reject_unknown(*vis, {"private"}, vp);
          const std::string pp = child(vp, "private");
          auto agents = agent_set(require(*vis, "private", vp), pp);
          for (AgentId a : agents) check_agent(a, pp);
          c.visibility = Visibility::private_to(std::move(agents));
        } else {
          schema("expected \"public\" or {\"private\": [...]}", vp);
        }
      }
      p.constraints.push_back(std::move(c));
    }
    std::sort(p.constraints.begin(), p.constraints.end(),
              [](const Constraint& a, const Constraint& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < p.constraints.size(); ++i)
      if (p.constraints[i - 1].id == p.constraints[i].id)
        schema("duplicate constraint id " + std::to_string(p.constraints[i].id.value), at);
  }

  {
    const std::string at = child(path, "ownership");
    const Json& own = object(require(j, "ownership", path), at);
    reject_unknown(own, {"variables", "constraints"}, at);
    if (auto it = own.find("variables"); it != own.end()) {
      const std::string vp = child(at, "variables");
      for (const auto& [key, owners] : object(*it, vp).items()) {
        const std::string kp = child(vp, key);
        const VariableId x{key_integer(key, kp)};
        if (!p.find_variable(x)) schema("unknown variable " + key, kp);
        auto set = agent_set(owners, kp);
        for (AgentId a : set) check_agent(a, kp);
        p.ownership.variables[x] = std::move(set);
      }
    }
    if (auto it = own.find("constraints"); it != own.end()) {
      const std::string cp = child(at, "constraints");
      for (const auto& [key, owners] : object(*it, cp).items()) {
        const std::string kp = child(cp, key);
        const ConstraintId c{key_integer(key, kp)};
        if (!p.find_constraint(c)) schema("unknown constraint " + key, kp);
        auto set = agent_set(owners, kp);
        for (AgentId a : set) check_agent(a, kp);
        p.ownership.constraints[c] = std::move(set);
      }
    }
  }

  if (auto it = j.find("privacy"); it != j.end()) {
    const std::string at = child(path, "privacy");
    object(*it, at);
    reject_unknown(*it, {"domain_costs", "entry_costs", "rewards"}, at);
    if (auto dc = it->find("domain_costs"); dc != it->end()) {
      const std::string dp = child(at, "domain_costs");
      for (std::size_t i = 0; i < array(*dc, dp).size(); ++i) {
        const std::string ip = child(dp, i);
        const Json& e = object((*dc)[i], ip);
        reject_unknown(e, {"agent", "value", "cost"}, ip);
        const AgentId a{integer(require(e, "agent", ip), child(ip, "agent"))};
        check_agent(a, child(ip, "agent"));
        const Value v = integer(require(e, "value", ip), child(ip, "value"));
        p.privacy.domain_reveal_cost[{a, v}] = cost(require(e, "cost", ip), child(ip, "cost"));
      }
    }
    if (auto ec = it->find("entry_costs"); ec != it->end()) {
      const std::string ep = child(at, "entry_costs");
      for (std::size_t i = 0; i < array(*ec, ep).size(); ++i) {
        const std::string ip = child(ep, i);
        const Json& e = object((*ec)[i], ip);
        reject_unknown(e, {"agent", "constraint", "tuple", "cost"}, ip);
        const AgentId a{integer(require(e, "agent", ip), child(ip, "agent"))};
        check_agent(a, child(ip, "agent"));
        const ConstraintId c{integer(require(e, "constraint", ip), child(ip, "constraint"))};
        if (!p.find_constraint(c))
          schema("unknown constraint " + std::to_string(c.value), child(ip, "constraint"));
        const std::string tp = child(ip, "tuple");
        Tuple t;
        const Json& tj = array(require(e, "tuple", ip), tp);
        for (std::size_t k = 0; k < tj.size(); ++k) t.push_back(integer(tj[k], child(tp, k)));
        p.privacy.entry_reveal_cost[{a, EntryId{c, std::move(t)}}] =
            cost(require(e, "cost", ip), child(ip, "cost"));
      }
    }
    if (auto rw = it->find("rewards"); rw != it->end()) {
      const std::string rp = child(at, "rewards");
      for (const auto& [key, value] : object(*rw, rp).items()) {
        const std::string kp = child(rp, key);
        const AgentId a{key_integer(key, kp)};
        check_agent(a, kp);
        p.privacy.agreement_reward[a] = cost(value, kp);
      }
    }
  }

  if (auto it = j.find("bounds"); it != j.end()) {
    const std::string at = child(path, "bounds");
    object(*it, at);
    reject_unknown(*it, {"lower", "upper"}, at);
    for (const char* key : {"lower", "upper"}) {
      auto b = it->find(key);
      if (b == it->end() || b->is_null()) continue;
      (std::string(key) == "lower" ? p.bounds.lower : p.bounds.upper) = cost(*b, child(at, key));
    }
  }

  if (auto it = j.find("outputs"); it != j.end() && !(it->is_string() && *it == "open")) {
    const std::string at = child(path, "outputs");
    if (!it->is_object()) schema("expected \"open\" or an object", at);
    for (AgentId a : p.agents) p.outputs.reveal_to[a];
    for (const auto& [key, vars] : it->items()) {
      const std::string kp = child(at, key);
      const AgentId a{key_integer(key, kp)};
      check_agent(a, kp);
      auto& set = p.outputs.reveal_to[a];
      const Json& arr = array(vars, kp);
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const VariableId x{integer(arr[i], child(kp, i))};
        if (!p.find_variable(x)) schema("unknown variable " + std::to_string(x.value), child(kp, i));
        set.insert(x);
      }
    }
  } else {
    p.outputs = open_outputs(p.agents, p.variables);
  }
  return p;
}

Json constraint_json(const Constraint& c) {
  Json entries = Json::array();
  for (const auto& [t, cost] : c.table) entries.push_back(Json::array({t, cost_json(cost)}));
  Json cj;
  cj["id"] = c.id.value;
  cj["scope"] = id_array(c.scope);
  cj["entries"] = entries;
  cj["visibility"] = c.visibility.is_public ? Json("public")
                                            : Json({{"private", id_array(c.visibility.agents)}});
  return cj;
}

Json problem_json(const Problem& p) {
  Json j;
  j["descriptor"] = encode(p.descriptor, NameForm::DefaultElided);
  j["agents"] = id_array(p.agents);
  Json vars = Json::array();
  for (const Variable& v : p.variables) vars.push_back({{"id", v.id.value}, {"domain", v.domain}});
  j["variables"] = vars;
  Json cons = Json::array();
  for (const Constraint& c : p.constraints) cons.push_back(constraint_json(c));
  j["constraints"] = cons;
  Json own;
  own["variables"] = Json::object();
  for (const auto& [x, owners] : p.ownership.variables)
    own["variables"][std::to_string(x.value)] = id_array(owners);
  own["constraints"] = Json::object();
  for (const auto& [c, owners] : p.ownership.constraints)
    own["constraints"][std::to_string(c.value)] = id_array(owners);
  j["ownership"] = own;
  Json priv;
  priv["domain_costs"] = Json::array();
  for (const auto& [key, c] : p.privacy.domain_reveal_cost)
    priv["domain_costs"].push_back(
        {{"agent", key.first.value}, {"value", key.second}, {"cost", cost_json(c)}});
  priv["entry_costs"] = Json::array();
  for (const auto& [key, c] : p.privacy.entry_reveal_cost)
    priv["entry_costs"].push_back({{"agent", key.first.value},
                                   {"constraint", key.second.constraint.value},
                                   {"tuple", key.second.tuple},
                                   {"cost", cost_json(c)}});
  priv["rewards"] = Json::object();
  for (const auto& [a, c] : p.privacy.agreement_reward)
    priv["rewards"][std::to_string(a.value)] = cost_json(c);
  j["privacy"] = priv;
  j["bounds"] = {{"lower", p.bounds.lower ? cost_json(*p.bounds.lower) : Json()},
                 {"upper", p.bounds.upper ? cost_json(*p.bounds.upper) : Json()}};
  if (is_open(p.outputs, p)) {
    j["outputs"] = "open";
  } else {
    Json out = Json::object();
    for (const auto& [a, vars] : p.outputs.reveal_to) out[std::to_string(a.value)] = id_array(vars);
    j["outputs"] = out;
  }
  return j;
}

Json message_json(const Message& m) {
  Json j;
  j["seq"] = m.seq;
  j["sender"] = m.sender.value;
  j["receiver"] = m.receiver.value;
  j["kind"] = std::string(name(m.kind));
  j["assignment"] = assignment_json(m.payload.assignment);
  j["cost"] = m.payload.cost ? cost_json(*m.payload.cost) : Json();
  Json vec = Json::array();
  for (const Cost& c : m.payload.cost_vector) vec.push_back(cost_json(c));
  j["cost_vector"] = vec;
  j["constraint"] = m.payload.constraint ? Json(m.payload.constraint->value) : Json();
  return j;
}

Json status_json(const TerminalStatus& s) {
  Json j;
  if (const auto* solved = std::get_if<Solved>(&s)) {
    j["terminal"] = "Solved";
    j["assignment"] = assignment_json(solved->assignment);
    j["cost"] = cost_json(solved->cost);
    j["holder"] = solved->holder.value;
  } else if (const auto* abandoned = std::get_if<Abandoned>(&s)) {
    j["terminal"] = "Abandoned";
    j["agent"] = abandoned->agent.value;
  } else {
    j["terminal"] = "NoSolution";
  }
  return j;
}

}  // namespace json_codec

using namespace json_codec;

Problem parse_problem_file(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("malformed JSON: ") + e.what(), "/");
  }
  Problem p = problem(j, "");
  const auto report = validate_problem(p);
  if (!report.ok()) {
    std::string text_out = "problem fails validation:";
    for (const auto& v : report.violations) text_out += " [" + v.code + ": " + v.detail + "]";
    throw ValidationError(text_out, "/");
  }
  return p;
}

std::string problem_to_json(const Problem& p) { return problem_json(p).dump(2) + "\n"; }

std::string transcript_to_jsonl(const Transcript& t) {
  std::string out;
  for (const Message& m : t.messages) out += message_json(m).dump() + "\n";
  out += status_json(t.status).dump() + "\n";
  return out;
}

Transcript parse_transcript(std::string_view text) {
  Transcript t;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool terminal = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string path = "/" + std::to_string(lineno);
    if (terminal) throw CorruptTranscript("line " + std::to_string(lineno) + " follows the terminal status");
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw CorruptTranscript("line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      if (!j.is_object()) throw SchemaError("expected an object", path);
      if (j.contains("terminal")) {
        terminal = true;
        const Json& kind = j["terminal"];
        if (kind == "Solved") {
          reject_unknown(j, {"terminal", "assignment", "cost", "holder"}, path);
          t.status = Solved{assignment(require(j, "assignment", path), child(path, "assignment")),
                            cost(require(j, "cost", path), child(path, "cost")),
                            AgentId{integer(require(j, "holder", path), child(path, "holder"))}};
        } else if (kind == "Abandoned") {
          reject_unknown(j, {"terminal", "agent"}, path);
          t.status = Abandoned{AgentId{integer(require(j, "agent", path), child(path, "agent"))}};
        } else if (kind == "NoSolution") {
          reject_unknown(j, {"terminal"}, path);
          t.status = NoSolution{};
        } else {
          throw SchemaError("unknown terminal status", child(path, "terminal"));
        }
        continue;
      }
      reject_unknown(j, {"seq", "sender", "receiver", "kind", "assignment", "cost", "cost_vector", "constraint"},
                     path);
      Message m;
      const std::int64_t seq = integer(require(j, "seq", path), child(path, "seq"));
      if (seq < 0) throw SchemaError("negative seq", child(path, "seq"));
      m.seq = static_cast<std::uint64_t>(seq);
      m.sender = AgentId{integer(require(j, "sender", path), child(path, "sender"))};
      m.receiver = AgentId{integer(require(j, "receiver", path), child(path, "receiver"))};
      const Json& kind = require(j, "kind", path);
      if (!kind.is_string()) throw SchemaError("expected a message kind", child(path, "kind"));
      m.kind = parse_message_kind(kind.get<std::string>());
      if (auto it = j.find("assignment"); it != j.end())
        m.payload.assignment = assignment(*it, child(path, "assignment"));
      if (auto it = j.find("cost"); it != j.end() && !it->is_null())
        m.payload.cost = cost(*it, child(path, "cost"));
      if (auto it = j.find("cost_vector"); it != j.end()) {
        if (!it->is_array()) throw SchemaError("expected an array", child(path, "cost_vector"));
        for (std::size_t i = 0; i < it->size(); ++i)
          m.payload.cost_vector.push_back(cost((*it)[i], child(child(path, "cost_vector"), i)));
      }
      if (auto it = j.find("constraint"); it != j.end() && !it->is_null())
        m.payload.constraint = ConstraintId{integer(*it, child(path, "constraint"))};
      t.messages.push_back(std::move(m));
    } catch (const FormatError& e) {
      throw CorruptTranscript(std::string("transcript line ") + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!terminal) throw CorruptTranscript("transcript has no terminal status line");
  return t;
}

}  // namespace dcopkit
