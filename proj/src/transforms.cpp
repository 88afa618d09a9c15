#include "dcopkit/transforms.hpp"

#include <algorithm>

#include "dcopkit/errors.hpp"

namespace dcopkit {

namespace {

// All scope tuples in declared-domain lexicographic order.
std::vector<Tuple> scope_tuples(const Problem& p, const std::vector<VariableId>& scope) {
  std::vector<Tuple> out{Tuple{}};
  for (VariableId x : scope) {
    const Variable* v = p.find_variable(x);
    if (!v) throw PreconditionError("unknown scope variable " + std::to_string(x.value));
    std::vector<Tuple> next;
    next.reserve(out.size() * v->domain.size());
    for (const Tuple& prefix : out) {
      for (Value val : v->domain) {
        Tuple t = prefix;
        t.push_back(val);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<VariableId> all_variable_ids(const Problem& p) {
  std::vector<VariableId> ids;
  for (const Variable& v : p.variables) ids.push_back(v.id);
  return ids;
}

}  // namespace

void reconcile_descriptor(Problem& p) {
  auto& x3 = p.descriptor.x3;
  x3.costs = std::any_of(p.constraints.begin(), p.constraints.end(), [](const Constraint& c) {
    return !c.visibility.is_public && c.scope.size() >= 2;
  });
  if (x3.empty()) x3.domains = true;
  p.descriptor.x4 = is_open(p.outputs, p) ? Decision::Open : Decision::Closed;
}

Problem merge_topology(const Problem& p, const Budget& budget) {
  const auto ids = all_variable_ids(p);
  if (p.constraints.size() == 1 && p.constraints.front().scope == ids) return p;

  Constraint merged;
  merged.id = ConstraintId{1};
  merged.scope = ids;
  for_each_assignment(p, budget, [&](const Assignment& a) {
    merged.table.emplace(project(a, ids), evaluate_assignment(p, a).cost);
  });

  std::set<AgentId> owners;
  std::set<AgentId> private_to;
  bool any_private = false;
  for (const Constraint& c : p.constraints) {
    auto o = p.owners(c.id);
    owners.insert(o.begin(), o.end());
    if (!c.visibility.is_public) {
      any_private = true;
      private_to.insert(c.visibility.agents.begin(), c.visibility.agents.end());
    }
  }
  if (owners.empty()) owners.insert(p.agents.begin(), p.agents.end());
  merged.visibility = any_private ? Visibility::private_to(private_to) : Visibility::public_();

  Problem out = p;
  out.constraints = {std::move(merged)};
  out.ownership.constraints = {{ConstraintId{1}, owners}};
  out.privacy.entry_reveal_cost.clear();
  reconcile_descriptor(out);
  return out;
}

Tuple dual_label_tuple(const Problem& primal, const Constraint& c, Value label) {
  const auto tuples = scope_tuples(primal, c.scope);
  if (label < 1 || static_cast<std::size_t>(label) > tuples.size())
    throw DomainError("dual label " + std::to_string(label) + " out of range for constraint " +
                      std::to_string(c.id.value));
  return tuples[static_cast<std::size_t>(label - 1)];
}

Problem primal_dual_convert(const Problem& p) {
  if (!p.descriptor.x3.costs)
    throw PreconditionError("primal-dual conversion expects a cost-distributed problem (x3 with Costs)");
  for (const Constraint& c : p.constraints)
    if (c.table.empty())
      throw DegenerateInput("constraint " + std::to_string(c.id.value) + " has no scope tuples");

  const ValueSystem system = p.system();
  Problem out;
  out.agents = p.agents;
  out.descriptor = p.descriptor;
  out.bounds = p.bounds;
  out.privacy.domain_reveal_cost = {};
  out.privacy.agreement_reward = p.privacy.agreement_reward;

  std::vector<std::vector<Tuple>> tuples;
  for (const Constraint& c : p.constraints) {
    tuples.push_back(scope_tuples(p, c.scope));
    const auto& ts = tuples.back();
    if (ts.empty())
      throw DegenerateInput("constraint " + std::to_string(c.id.value) + " has no scope tuples");

    const VariableId dual_var{c.id.value};
    Variable v{dual_var, {}};
    for (std::size_t k = 0; k < ts.size(); ++k) v.domain.push_back(static_cast<Value>(k + 1));
    out.variables.push_back(std::move(v));
    out.ownership.variables[dual_var] = p.owners(c.id);

    Constraint unary;
    unary.id = ConstraintId{c.id.value};
    unary.scope = {dual_var};
    unary.visibility = c.visibility;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const Tuple label{static_cast<Value>(k + 1)};
      unary.table[label] = c.table.at(ts[k]);
      for (AgentId a : p.owners(c.id)) {
        const Cost entry_cost = p.privacy.entry_cost(a, EntryId{c.id, ts[k]});
        if (entry_cost != Cost{})
          out.privacy.entry_reveal_cost[{a, EntryId{unary.id, label}}] = entry_cost;
      }
    }
    out.ownership.constraints[unary.id] = p.owners(c.id);
    out.constraints.push_back(std::move(unary));
  }

  std::int64_t next_id = 1;
  for (const Constraint& c : p.constraints) next_id = std::max(next_id, c.id.value + 1);

  const Cost incompatible = top(system);
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    for (std::size_t j = i + 1; j < p.constraints.size(); ++j) {
      const Constraint& ci = p.constraints[i];
      const Constraint& cj = p.constraints[j];
      std::vector<std::pair<std::size_t, std::size_t>> shared;
      for (std::size_t a = 0; a < ci.scope.size(); ++a)
        for (std::size_t b = 0; b < cj.scope.size(); ++b)
          if (ci.scope[a] == cj.scope[b]) shared.emplace_back(a, b);
      if (shared.empty()) continue;

      Constraint compat;
      compat.id = ConstraintId{next_id++};
      compat.scope = {VariableId{ci.id.value}, VariableId{cj.id.value}};
      compat.visibility = Visibility::public_();
      for (std::size_t ki = 0; ki < tuples[i].size(); ++ki) {
        for (std::size_t kj = 0; kj < tuples[j].size(); ++kj) {
          const bool agree = std::all_of(shared.begin(), shared.end(), [&](const auto& s) {
            return tuples[i][ki][s.first] == tuples[j][kj][s.second];
          });
          compat.table[{static_cast<Value>(ki + 1), static_cast<Value>(kj + 1)}] =
              agree ? Cost{} : incompatible;
        }
      }
      auto owners = p.owners(ci.id);
      auto more = p.owners(cj.id);
      owners.insert(more.begin(), more.end());
      out.ownership.constraints[compat.id] = owners;
      out.constraints.push_back(std::move(compat));
    }
  }

  // Dual variable for constraint c is revealed to an agent that received any
  // variable of c's scope.
  for (AgentId a : p.agents) {
    auto& dst = out.outputs.reveal_to[a];
    auto it = p.outputs.reveal_to.find(a);
    if (it == p.outputs.reveal_to.end()) continue;
    for (const Constraint& c : p.constraints)
      if (std::any_of(c.scope.begin(), c.scope.end(),
                      [&](VariableId x) { return it->second.contains(x); }))
        dst.insert(VariableId{c.id.value});
  }

  out.descriptor.x3 = DistributionReason{true, false, false};
  reconcile_descriptor(out);
  return out;
}

Assignment recover_primal_assignment(const Problem& primal, const Assignment& dual) {
  Assignment out;
  for (const Constraint& c : primal.constraints) {
    auto it = dual.find(VariableId{c.id.value});
    if (it == dual.end())
      throw PreconditionError("dual assignment misses constraint " + std::to_string(c.id.value));
    const Tuple t = dual_label_tuple(primal, c, it->second);
    for (std::size_t k = 0; k < c.scope.size(); ++k) out[c.scope[k]] = t[k];
  }
  return out;
}

}  // namespace dcopkit
