#include "dcopkit/privacy_check.hpp"

#include <algorithm>

#include "dcopkit/errors.hpp"
#include "dcopkit/nomenclature.hpp"
#include "dcopkit/solvers.hpp"
#include "json_codec.hpp"

namespace dcopkit {

using json_codec::Json;

void validate_prior(const Prior& prior) {
  if (prior.support.empty()) throw PreconditionError("prior has an empty support");
  Rational total = 0;
  const auto& agents = prior.support.front().problem.agents;
  for (std::size_t i = 0; i < prior.support.size(); ++i) {
    const PriorInstance& inst = prior.support[i];
    if (inst.probability <= 0)
      throw PreconditionError("prior instance " + std::to_string(i) + " has probability " +
                              to_string(inst.probability) + ", expected > 0");
    if (inst.problem.agents != agents)
      throw PreconditionError("prior instance " + std::to_string(i) + " has a different agent set");
    for (std::size_t k = 0; k < i; ++k)
      if (prior.support[k].problem == inst.problem)
        throw PreconditionError("prior instances " + std::to_string(k) + " and " +
                                std::to_string(i) + " are identical");
    total += inst.probability;
  }
  if (total != 1) throw PreconditionError("prior probabilities sum to " + to_string(total) + ", not 1");
}

RequestedOutput oracle_requested_output(const Problem& p) {
  const auto solution = oracle_solve(p);
  RequestedOutput out;
  for (AgentId a : p.agents) {
    if (!solution) {
      out[a] = std::nullopt;
      continue;
    }
    Assignment mine;
    auto it = p.outputs.reveal_to.find(a);
    if (it != p.outputs.reveal_to.end())
      for (VariableId x : it->second) mine[x] = solution->assignment.at(x);
    out[a] = std::move(mine);
  }
  return out;
}

std::string secret_value(const Problem& p, const SecretId& s) {
  if (s.kind == SecretId::Kind::DomainMembership) {
    const Variable* v = p.find_variable(s.variable);
    const bool in = v && p.owners(s.variable).contains(s.agent) &&
                    std::find(v->domain.begin(), v->domain.end(), s.value) != v->domain.end();
    return in ? "in" : "out";
  }
  const Constraint* c = p.find_constraint(s.constraint);
  if (!c || c->visibility.is_public || !p.owners(s.constraint).contains(s.agent)) return "absent";
  auto it = c->table.find(s.tuple);
  return it == c->table.end() ? "absent" : it->second.str();
}

std::vector<SecretId> prior_secrets(const Prior& prior) {
  std::set<SecretId> out;
  for (const PriorInstance& inst : prior.support) {
    const Problem& p = inst.problem;
    for (const Variable& v : p.variables)
      for (AgentId a : p.owners(v.id))
        for (Value val : v.domain) out.insert(SecretId::domain_membership(a, v.id, val));
    for (const Constraint& c : p.constraints) {
      if (c.visibility.is_public) continue;
      for (AgentId a : p.owners(c.id))
        for (const auto& [t, cost] : c.table) out.insert(SecretId::constraint_entry(a, c.id, t));
    }
  }
  return {out.begin(), out.end()};
}

namespace {

Json inputs_json(const ColluderInputs& inputs) {
  Json j = Json::array();
  for (const auto& [a, in] : inputs) {
    Json domains = Json::array();
    for (const auto& [x, d] : in.domains) domains.push_back(Json::array({x.value, d}));
    Json cons = Json::array();
    for (const auto& [id, c] : in.constraints) cons.push_back(json_codec::constraint_json(c));
    j.push_back({{"agent", a.value}, {"domains", domains}, {"constraints", cons}});
  }
  return j;
}

std::string view_key(const AttackerView& v) {
  Json j;
  Json colluders = Json::array();
  for (AgentId a : v.colluders) colluders.push_back(a.value);
  j["colluders"] = colluders;
  Json observed = Json::array();
  for (const Message& m : v.observed) observed.push_back(json_codec::message_json(m));
  j["observed"] = observed;
  j["inputs"] = inputs_json(v.inputs);
  Json delivered = Json::array();
  for (const auto& [a, asg] : v.delivered)
    delivered.push_back(Json::array({a.value, json_codec::assignment_json(asg)}));
  j["delivered"] = delivered;
  return j.dump();
}

std::string output_key(const RequestedOutput& out, const std::set<AgentId>& colluders) {
  Json j = Json::array();
  for (AgentId a : colluders) {
    auto it = out.find(a);
    if (it == out.end() || !it->second)
      j.push_back(Json::array({a.value, nullptr}));
    else
      j.push_back(Json::array({a.value, json_codec::assignment_json(*it->second)}));
  }
  return j.dump();
}

// Everything the checkers need for one prior: transcripts, requested outputs
// and the value of every secret in every instance.
struct Evidence {
  std::vector<Transcript> transcripts;
  std::vector<RequestedOutput> outputs;
  std::vector<SecretId> secrets;
  std::vector<std::vector<std::string>> values;  // [instance][secret]
};

Evidence gather(const Prior& prior, const ProtocolFactory& protocol,
                const PrivacyCheckConfig& config, std::size_t colluder_sets) {
  validate_prior(prior);
  const std::size_t n = prior.support.size();
  if (n * (2 + colluder_sets) > config.max_runs)
    throw ResourceError("privacy check needs " + std::to_string(n * (2 + colluder_sets)) +
                        " protocol runs and views, above the budget of " +
                        std::to_string(config.max_runs));
  Evidence e;
  e.secrets = prior_secrets(prior);
  for (std::size_t i = 0; i < n; ++i) {
    const Problem& p = prior.support[i].problem;
    Transcript first = simulate(protocol(p, config.seed), p.agents);
    Transcript second = simulate(protocol(p, config.seed), p.agents);
    if (first != second)
      throw ContractError("protocol produced different transcripts for prior instance " +
                          std::to_string(i));
    e.transcripts.push_back(std::move(first));
    e.outputs.push_back(config.requested(p));
    std::vector<std::string> vals;
    for (const SecretId& s : e.secrets) vals.push_back(secret_value(p, s));
    e.values.push_back(std::move(vals));
  }
  return e;
}

struct Grouping {
  std::vector<AttackerView> views;                  // per instance
  std::vector<std::size_t> view_group, output_group;  // per instance
  std::vector<std::vector<std::size_t>> view_members, output_members;
};

Grouping group(const Prior& prior, const Evidence& e, const std::set<AgentId>& colluders) {
  Grouping g;
  std::map<std::string, std::size_t> by_view, by_output;
  for (std::size_t i = 0; i < prior.support.size(); ++i) {
    const Problem& p = prior.support[i].problem;
    ColluderInputs inputs = inputs_of(p, colluders);
    const std::string out = output_key(e.outputs[i], colluders) + inputs_json(inputs).dump();
    g.views.push_back(view_of(e.transcripts[i], colluders, std::move(inputs)));
    const std::string view = view_key(g.views.back()) + output_key(e.outputs[i], colluders);
    auto [vit, vnew] = by_view.emplace(view, g.view_members.size());
    if (vnew) g.view_members.emplace_back();
    g.view_members[vit->second].push_back(i);
    g.view_group.push_back(vit->second);
    auto [oit, onew] = by_output.emplace(out, g.output_members.size());
    if (onew) g.output_members.emplace_back();
    g.output_members[oit->second].push_back(i);
    g.output_group.push_back(oit->second);
  }
  return g;
}

Rational posterior(const Prior& prior, const Evidence& e, const std::vector<std::size_t>& members,
                   std::size_t secret, const std::string& value) {
  Rational hit = 0, mass = 0;
  for (std::size_t i : members) {
    mass += prior.support[i].probability;
    if (e.values[i][secret] == value) hit += prior.support[i].probability;
  }
  return hit / mass;
}

// Colluder sets of size 1..t in lexicographic order.
std::vector<std::set<AgentId>> colluder_sets(const std::vector<AgentId>& agents, std::size_t t) {
  std::vector<std::set<AgentId>> out;
  std::vector<AgentId> sorted = agents;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t limit = std::min(t, sorted.size());
  for (std::size_t k = 1; k <= limit; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::set<AgentId> s;
      for (std::size_t i : idx) s.insert(sorted[i]);
      out.push_back(std::move(s));
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == sorted.size() - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

template <typename Violates>
PrivacyVerdict check(const Prior& prior, const ProtocolFactory& protocol,
                     const PrivacyCheckConfig& config, Violates violates) {
  if (prior.support.empty()) throw PreconditionError("prior has an empty support");
  const auto sets = colluder_sets(prior.support.front().problem.agents, config.t);
  const Evidence e = gather(prior, protocol, config, sets.size());
  for (const auto& colluders : sets) {
    const Grouping g = group(prior, e, colluders);
    for (std::size_t i = 0; i < prior.support.size(); ++i) {
      for (std::size_t s = 0; s < e.secrets.size(); ++s) {
        const std::string& value = e.values[i][s];
        Rational given_view = posterior(prior, e, g.view_members[g.view_group[i]], s, value);
        Rational given_output = posterior(prior, e, g.output_members[g.output_group[i]], s, value);
        if (violates(given_view, given_output))
          return {false, Counterexample{g.views[i], e.secrets[s], value, std::move(given_view),
                                        std::move(given_output)}};
      }
    }
  }
  return {};
}

}  // namespace

std::vector<ViewGroup> view_posteriors(const Prior& prior, const ProtocolFactory& protocol,
                                       const std::set<AgentId>& colluders,
                                       const PrivacyCheckConfig& config) {
  const Evidence e = gather(prior, protocol, config, 1);
  const Grouping g = group(prior, e, colluders);
  std::vector<ViewGroup> out;
  for (const auto& members : g.view_members) {
    ViewGroup vg;
    vg.instances = members;
    vg.probability = 0;
    for (std::size_t i : members) vg.probability += prior.support[i].probability;
    for (std::size_t s = 0; s < e.secrets.size(); ++s) {
      auto& dist = vg.posterior[e.secrets[s]];
      for (std::size_t i : members) dist[e.values[i][s]] += prior.support[i].probability / vg.probability;
    }
    out.push_back(std::move(vg));
  }
  return out;
}

PrivacyVerdict check_requested_privacy(const Prior& prior, const ProtocolFactory& protocol,
                                       const PrivacyCheckConfig& config) {
  return check(prior, protocol, config,
               [](const Rational& view, const Rational& output) { return view != output; });
}

PrivacyVerdict check_nonuniform_requested_privacy(const Prior& prior,
                                                  const ProtocolFactory& protocol,
                                                  const PrivacyCheckConfig& config) {
  return check(prior, protocol, config,
               [](const Rational& view, const Rational& output) { return output < 1 && view == 1; });
}

namespace {

Prior reference_prior() {
  Prior prior;
  for (Value hidden : {2, 3}) {
    Problem p;
    p.descriptor = decode("DisCOP");
    p.agents = {AgentId{1}, AgentId{2}};
    p.variables = {Variable{VariableId{1}, {1}}, Variable{VariableId{2}, {1, hidden}}};
    p.ownership.variables[VariableId{1}] = {AgentId{1}};
    p.ownership.variables[VariableId{2}] = {AgentId{2}};
    p.outputs = open_outputs(p.agents, p.variables);
    prior.support.push_back({std::move(p), Rational(1, 2)});
  }
  return prior;
}

}  // namespace

Family builtin_family(std::string_view name) {
  if (name == "broadcast-family") return {"broadcast", reference_prior()};
  if (name == "ideal-family") return {"ideal", reference_prior()};
  throw ConfigurationError("unknown built-in family '" + std::string(name) + "'");
}

std::vector<std::string> builtin_family_names() { return {"broadcast-family", "ideal-family"}; }

Family parse_family_file(std::string_view text) {
  using namespace json_codec;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("malformed JSON: ") + e.what(), "/");
  }
  if (!j.is_object()) throw SchemaError("expected an object at /", "/");
  reject_unknown(j, {"protocol", "instances"}, "");
  Family f;
  const Json& proto = require(j, "protocol", "");
  if (!proto.is_string()) throw SchemaError("expected a protocol name at /protocol", "/protocol");
  f.protocol = proto.get<std::string>();
  const Json& instances = require(j, "instances", "");
  if (!instances.is_array()) throw SchemaError("expected an array at /instances", "/instances");
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const std::string path = child("/instances", i);
    const Json& inst = instances[i];
    if (!inst.is_object()) throw SchemaError("expected an object at " + path, path);
    reject_unknown(inst, {"probability", "problem"}, path);
    const Json& prob = require(inst, "probability", path);
    Rational probability;
    try {
      if (prob.is_number_integer())
        probability = prob.get<std::int64_t>();
      else if (prob.is_string())
        probability = parse_rational(prob.get<std::string>());
      else
        throw DomainError("expected an integer or \"a/b\"");
    } catch (const DomainError& e) {
      throw SchemaError(std::string(e.what()) + " at " + child(path, "probability"),
                        child(path, "probability"));
    }
    Problem p = problem(require(inst, "problem", path), child(path, "problem"));
    const auto report = validate_problem(p);
    if (!report.ok())
      throw ValidationError("instance fails validation: " + report.violations.front().code + ": " +
                                report.violations.front().detail,
                            child(path, "problem"));
    f.prior.support.push_back({std::move(p), probability});
  }
  try {
    validate_prior(f.prior);
  } catch (const PreconditionError& e) {
    throw ValidationError(e.what(), "/instances");
  }
  return f;
}

std::string counterexample_to_text(const Counterexample& c) {
  std::string colluders;
  for (AgentId a : c.view.colluders) colluders += (colluders.empty() ? "a" : ",a") + std::to_string(a.value);
  std::string out;
  out += "colluders: {" + colluders + "}\n";
  out += "secret: " + c.secret.str() + " = " + c.value + "\n";
  out += "posterior given view: " + to_string(c.posterior_given_view) + "\n";
  out += "posterior given output: " + to_string(c.posterior_given_output) + "\n";
  out += "observed messages:\n";
  for (const Message& m : c.view.observed) out += "  " + json_codec::message_json(m).dump() + "\n";
  return out;
}

}  // namespace dcopkit
