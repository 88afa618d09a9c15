#include "dcopkit/model.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "dcopkit/errors.hpp"

namespace dcopkit {

Cost PrivacyCostModel::domain_cost(AgentId agent, Value value) const {
  auto it = domain_reveal_cost.find({agent, value});
  return it == domain_reveal_cost.end() ? Cost{} : it->second;
}

Cost PrivacyCostModel::entry_cost(AgentId agent, const EntryId& entry) const {
  auto it = entry_reveal_cost.find({agent, entry});
  return it == entry_reveal_cost.end() ? Cost{} : it->second;
}

Cost PrivacyCostModel::reward(AgentId agent) const {
  auto it = agreement_reward.find(agent);
  return it == agreement_reward.end() ? Cost::maximal() : it->second;
}

const Variable* Problem::find_variable(VariableId id) const {
  auto it = std::lower_bound(variables.begin(), variables.end(), id,
                             [](const Variable& v, VariableId x) { return v.id < x; });
  return it != variables.end() && it->id == id ? &*it : nullptr;
}

const Constraint* Problem::find_constraint(ConstraintId id) const {
  auto it = std::lower_bound(constraints.begin(), constraints.end(), id,
                             [](const Constraint& c, ConstraintId x) { return c.id < x; });
  return it != constraints.end() && it->id == id ? &*it : nullptr;
}

std::set<AgentId> Problem::knowers(const Constraint& c) const {
  if (c.visibility.is_public) return {agents.begin(), agents.end()};
  return c.visibility.agents;
}

bool Problem::knows(AgentId agent, const Constraint& c) const {
  return c.visibility.is_public || c.visibility.agents.contains(agent);
}

std::set<AgentId> Problem::owners(VariableId id) const {
  auto it = ownership.variables.find(id);
  return it == ownership.variables.end() ? std::set<AgentId>{} : it->second;
}

std::set<AgentId> Problem::owners(ConstraintId id) const {
  auto it = ownership.constraints.find(id);
  return it == ownership.constraints.end() ? std::set<AgentId>{} : it->second;
}

AgentId Problem::controller(VariableId id) const {
  auto it = ownership.variables.find(id);
  if (it == ownership.variables.end() || it->second.empty())
    throw PreconditionError("variable " + std::to_string(id.value) + " has no owner");
  return *it->second.begin();
}

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

bool is_open(const OutputMapping& outputs, const Problem& p) {
  for (AgentId a : p.agents) {
    auto it = outputs.reveal_to.find(a);
    if (it == outputs.reveal_to.end() || it->second.size() != p.variables.size()) return false;
  }
  return true;
}

OutputMapping open_outputs(const std::vector<AgentId>& agents,
                           const std::vector<Variable>& variables) {
  OutputMapping out;
  for (AgentId a : agents) {
    auto& set = out.reveal_to[a];
    for (const Variable& v : variables) set.insert(v.id);
  }
  return out;
}

namespace {

class Validator {
 public:
  explicit Validator(const Problem& p) : p_(p) {}

  ValidationReport run() {
    check_agents();
    check_variables();
    check_constraints();
    check_ownership();
    check_privacy();
    check_bounds();
    check_outputs();
    check_descriptor();
    return std::move(report_);
  }

 private:
  template <typename... Parts>
  void fail(std::string code, const Parts&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    report_.violations.push_back({std::move(code), os.str()});
  }

  bool agent_exists(AgentId a) const {
    return std::binary_search(sorted_agents_.begin(), sorted_agents_.end(), a);
  }

  void check_agents() {
    if (p_.agents.empty()) fail("no agents", "a problem needs at least one agent");
    sorted_agents_ = p_.agents;
    std::sort(sorted_agents_.begin(), sorted_agents_.end());
    if (std::adjacent_find(sorted_agents_.begin(), sorted_agents_.end()) != sorted_agents_.end())
      fail("duplicate agent", "agent ids must be distinct");
    for (AgentId a : p_.agents)
      if (a.value < 1) fail("invalid agent id", "agent ", a, " must be >= 1");
  }

  void check_variables() {
    if (p_.variables.empty()) fail("no variables", "a problem needs at least one variable");
    for (std::size_t i = 0; i < p_.variables.size(); ++i) {
      const Variable& v = p_.variables[i];
      if (i > 0 && !(p_.variables[i - 1].id < v.id))
        fail("unsorted variables", "variable ids must be distinct and ascending at ", v.id);
      if (v.domain.empty()) fail("empty domain", "variable ", v.id, " has an empty domain");
      std::vector<Value> sorted = v.domain;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail("duplicate domain value", "variable ", v.id, " repeats a domain value");
    }
  }

  void check_constraints() {
    const ValueSystem system = p_.system();
    for (std::size_t i = 0; i < p_.constraints.size(); ++i) {
      const Constraint& c = p_.constraints[i];
      if (i > 0 && !(p_.constraints[i - 1].id < c.id))
        fail("unsorted constraints", "constraint ids must be distinct and ascending at ", c.id);
      if (c.scope.empty()) {
        fail("empty scope", "constraint ", c.id, " has an empty scope");
        continue;
      }
      std::vector<VariableId> sorted = c.scope;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail("duplicate scope variable", "constraint ", c.id, " repeats a scope variable");

      bool scope_ok = true;
      std::size_t expected = 1;
      for (VariableId x : c.scope) {
        const Variable* v = p_.find_variable(x);
        if (!v) {
          fail("unknown variable", "constraint ", c.id, " references variable ", x);
          scope_ok = false;
        } else {
          expected *= v->domain.size();
        }
      }
      for (const auto& [tuple, cost] : c.table) {
        if (!is_legal(cost, system))
          fail("illegal cost", "constraint ", c.id, " has cost ", cost, " outside the ",
               name(system), " value system");
        if (!scope_ok) continue;
        if (tuple.size() != c.scope.size()) {
          fail("malformed tuple", "constraint ", c.id, " has an entry of arity ", tuple.size());
          continue;
        }
        for (std::size_t k = 0; k < tuple.size(); ++k) {
          const auto& dom = p_.find_variable(c.scope[k])->domain;
          if (std::find(dom.begin(), dom.end(), tuple[k]) == dom.end()) {
            fail("tuple outside domain", "constraint ", c.id, " has an entry with value ", tuple[k],
                 " outside the domain of variable ", c.scope[k]);
            break;
          }
        }
      }
      if (scope_ok && c.table.size() < expected)
        fail("partial constraint table", "constraint ", c.id, " defines ", c.table.size(), " of ",
             expected, " tuples");
      if (!c.visibility.is_public) {
        if (c.visibility.agents.empty())
          fail("empty visibility", "private constraint ", c.id, " is known to nobody");
        for (AgentId a : c.visibility.agents)
          if (!agent_exists(a))
            fail("unknown agent", "constraint ", c.id, " is private to unknown agent ", a);
      }
    }
  }

  void check_ownership() {
    for (const Variable& v : p_.variables) {
      auto owners = p_.owners(v.id);
      if (owners.empty()) fail("missing owner", "variable ", v.id, " has no owner");
    }
    for (const Constraint& c : p_.constraints) {
      auto owners = p_.owners(c.id);
      if (owners.empty()) fail("missing owner", "constraint ", c.id, " has no owner");
    }
    for (const auto& [x, owners] : p_.ownership.variables) {
      if (!p_.find_variable(x)) fail("unknown variable", "ownership names variable ", x);
      for (AgentId a : owners)
        if (!agent_exists(a)) fail("unknown agent", "variable ", x, " is owned by agent ", a);
    }
    for (const auto& [c, owners] : p_.ownership.constraints) {
      if (!p_.find_constraint(c)) fail("unknown constraint", "ownership names constraint ", c);
      for (AgentId a : owners)
        if (!agent_exists(a)) fail("unknown agent", "constraint ", c, " is owned by agent ", a);
    }
  }

  void check_cost_nonnegative(const Cost& c, const char* what) {
    if (!c.is_maximal() && c.value() < 0) fail("negative privacy cost", what, " is ", c);
  }

  void check_privacy() {
    const auto& m = p_.privacy;
    for (const auto& [key, cost] : m.domain_reveal_cost) {
      check_cost_nonnegative(cost, "domain revelation cost");
      bool owns_variable = false;
      for (const auto& [x, owners] : p_.ownership.variables)
        owns_variable = owns_variable || owners.contains(key.first);
      if (!agent_exists(key.first) || !owns_variable)
        fail("unknown secret", "domain revelation cost for agent ", key.first,
             " which owns no variable");
    }
    for (const auto& [key, cost] : m.entry_reveal_cost) {
      check_cost_nonnegative(cost, "entry revelation cost");
      const auto& [agent, entry] = key;
      const Constraint* c = p_.find_constraint(entry.constraint);
      if (!c || !c->table.contains(entry.tuple) || !p_.owners(c->id).contains(agent))
        fail("unknown secret", "entry revelation cost for agent ", agent, " on constraint ",
             entry.constraint, " names no entry owned by that agent");
    }
    for (const auto& [agent, reward] : m.agreement_reward) {
      check_cost_nonnegative(reward, "agreement reward");
      if (!agent_exists(agent)) fail("unknown agent", "reward for unknown agent ", agent);
    }
  }

  void check_bounds() {
    const auto& b = p_.bounds;
    if (b.lower && b.upper && *b.upper < *b.lower)
      fail("inverted bounds", "lower bound ", *b.lower, " exceeds upper bound ", *b.upper);
    for (const auto* bound : {&b.lower, &b.upper})
      if (*bound && !bound->value().is_maximal() && bound->value().value() < 0)
        fail("negative bound", "bound ", bound->value(), " is negative");
  }

  void check_outputs() {
    for (const auto& [agent, vars] : p_.outputs.reveal_to) {
      if (!agent_exists(agent)) fail("unknown agent", "outputs name unknown agent ", agent);
      for (VariableId x : vars)
        if (!p_.find_variable(x)) fail("unknown variable", "outputs reveal unknown variable ", x);
    }
  }

  void check_descriptor() {
    const auto& d = p_.descriptor;
    if (d.x3.empty()) fail("empty distribution reason", "descriptor x3 must be non-empty");
    const bool private_costs =
        std::any_of(p_.constraints.begin(), p_.constraints.end(), [](const Constraint& c) {
          return !c.visibility.is_public && c.scope.size() >= 2;
        });
    if (d.x3.costs != private_costs)
      fail("descriptor/costs mismatch",
           private_costs ? "private constraints exist but x3 lacks Costs"
                         : "x3 includes Costs but no private constraint of arity >= 2 exists");
    const bool open = is_open(p_.outputs, p_);
    if ((d.x4 == Decision::Open) != open)
      fail("descriptor/output mismatch",
           open ? "x4 is Closed but outputs reveal every variable to every agent"
                : "x4 is Open but some agent does not receive every variable");
  }

  const Problem& p_;
  std::vector<AgentId> sorted_agents_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_problem(const Problem& p) { return Validator(p).run(); }

bool covers(const Assignment& a, const std::vector<VariableId>& scope) {
  return std::all_of(scope.begin(), scope.end(), [&](VariableId x) { return a.contains(x); });
}

Tuple project(const Assignment& a, const std::vector<VariableId>& scope) {
  Tuple t;
  t.reserve(scope.size());
  for (VariableId x : scope) {
    auto it = a.find(x);
    if (it == a.end())
      throw PreconditionError("assignment does not cover variable " + std::to_string(x.value));
    t.push_back(it->second);
  }
  return t;
}

bool acceptable(const Problem& p, const Cost& c) {
  return c != top(p.system()) && p.bounds.contains(c);
}

std::vector<Cost> constraint_costs(const Problem& p, const Assignment& full) {
  for (const Variable& v : p.variables) {
    auto it = full.find(v.id);
    if (it == full.end())
      throw PreconditionError("partial assignment: variable " + std::to_string(v.id.value) +
                              " is unassigned");
    if (std::find(v.domain.begin(), v.domain.end(), it->second) == v.domain.end())
      throw PreconditionError("value " + std::to_string(it->second) +
                              " is outside the domain of variable " + std::to_string(v.id.value));
  }
  std::vector<Cost> costs;
  costs.reserve(p.constraints.size());
  for (const Constraint& c : p.constraints) {
    auto it = c.table.find(project(full, c.scope));
    if (it == c.table.end())
      throw PreconditionError("constraint " + std::to_string(c.id.value) +
                              " has no entry for the assignment");
    costs.push_back(it->second);
  }
  return costs;
}

Evaluation evaluate_assignment(const Problem& p, const Assignment& full) {
  const auto costs = constraint_costs(p, full);
  Cost total = aggregate(costs, p.system());
  const bool ok = acceptable(p, total);
  return {std::move(total), ok};
}

std::size_t search_space_size(const Problem& p) {
  std::size_t total = 1;
  for (const Variable& v : p.variables) {
    if (v.domain.empty()) return 0;
    if (total > std::numeric_limits<std::size_t>::max() / v.domain.size())
      return std::numeric_limits<std::size_t>::max();
    total *= v.domain.size();
  }
  return total;
}

}  // namespace dcopkit
