#pragma once

// Seeded generator of small valid problems for property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>

#include "dcopkit/model.hpp"
#include "dcopkit/transforms.hpp"

namespace dcopkit::testing {

struct GeneratorOptions {
  ValueSystem system = ValueSystem::Weighted;
  std::size_t max_variables = 4;
  std::size_t max_domain = 3;
  std::size_t max_agents = 3;
  std::size_t max_constraints = 4;
  bool force_private_costs = false;  // at least one private constraint of arity >= 2
  bool random_bounds = false;
  bool random_privacy = false;
};

class ProblemGenerator {
 public:
  explicit ProblemGenerator(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(int percent) { return static_cast<int>(below(100)) < percent; }

  // k/d with k in 0..9 and d in 1..3.
  Cost rational_cost() {
    return Cost(Rational(static_cast<long>(below(10)), static_cast<long>(1 + below(3))));
  }

  Cost cost_for(ValueSystem system) {
    switch (system) {
      case ValueSystem::Boolean:
        return coin(30) ? Cost::maximal() : Cost(0);
      case ValueSystem::Probabilistic:
        return Cost(Rational(static_cast<long>(below(4)), 3));
      default:
        return coin(5) ? Cost::maximal() : rational_cost();
    }
  }

  std::set<AgentId> some_agents(const std::vector<AgentId>& agents, int extra_percent) {
    std::set<AgentId> out{agents[below(agents.size())]};
    for (AgentId a : agents)
      if (coin(extra_percent)) out.insert(a);
    return out;
  }

  Problem make(const GeneratorOptions& o = {}) {
    Problem p;
    p.descriptor.x1 = o.system;
    const std::size_t n_agents = 1 + below(o.max_agents);
    for (std::size_t i = 1; i <= n_agents; ++i) p.agents.push_back(AgentId{static_cast<std::int64_t>(i)});

    const std::size_t n_vars = 1 + below(o.max_variables);
    for (std::size_t i = 1; i <= n_vars; ++i) {
      Variable v{VariableId{static_cast<std::int64_t>(i)}, {}};
      const std::size_t size = 1 + below(o.max_domain);
      // Distinct labels in a random declared order.
      std::vector<Value> labels{1, 2, 3, 4, 5};
      std::shuffle(labels.begin(), labels.end(), rng_);
      v.domain.assign(labels.begin(), labels.begin() + static_cast<long>(size));
      p.ownership.variables[v.id] = some_agents(p.agents, 10);
      p.variables.push_back(std::move(v));
    }

    std::size_t n_cons = below(o.max_constraints + 1);
    const bool need_private = o.force_private_costs && n_vars >= 2;
    if (need_private && n_cons == 0) n_cons = 1;
    for (std::size_t i = 1; i <= n_cons; ++i) {
      Constraint c;
      c.id = ConstraintId{static_cast<std::int64_t>(i)};
      std::size_t arity = 1 + below(std::min<std::size_t>(3, n_vars));
      if (need_private && i == 1) arity = std::max<std::size_t>(2, arity);
      std::vector<VariableId> ids;
      for (const Variable& v : p.variables) ids.push_back(v.id);
      std::shuffle(ids.begin(), ids.end(), rng_);
      c.scope.assign(ids.begin(), ids.begin() + static_cast<long>(arity));
      fill_table(p, c, o.system);
      const auto owners = some_agents(p.agents, 15);
      if ((need_private && i == 1) || coin(40))
        c.visibility = Visibility::private_to(owners);
      p.ownership.constraints[c.id] = owners;
      p.constraints.push_back(std::move(c));
    }

    if (o.random_bounds && coin(50)) {
      if (coin(50)) p.bounds.lower = rational_cost();
      if (coin(70)) {
        Cost upper = rational_cost() + Cost(Rational(static_cast<long>(below(10))));
        if (p.bounds.lower && upper < *p.bounds.lower) upper = *p.bounds.lower;
        p.bounds.upper = upper;
      }
    }
    if (o.random_privacy) {
      for (AgentId a : p.agents) {
        for (Value v = 1; v <= 5; ++v)
          if (owns_any_variable(p, a) && coin(40)) p.privacy.domain_reveal_cost[{a, v}] = rational_cost();
        if (coin(50)) p.privacy.agreement_reward[a] = Cost(static_cast<std::int64_t>(below(30)));
      }
      for (const Constraint& c : p.constraints) {
        if (c.visibility.is_public) continue;
        for (AgentId a : p.owners(c.id))
          for (const auto& [t, cost] : c.table)
            if (coin(30)) p.privacy.entry_reveal_cost[{a, EntryId{c.id, t}}] = rational_cost();
      }
    }
    p.outputs = open_outputs(p.agents, p.variables);
    reconcile_descriptor(p);
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  static bool owns_any_variable(const Problem& p, AgentId a) {
    for (const auto& [x, owners] : p.ownership.variables)
      if (owners.contains(a)) return true;
    return false;
  }

  void fill_table(const Problem& p, Constraint& c, ValueSystem system) {
    std::vector<const std::vector<Value>*> domains;
    for (VariableId x : c.scope) domains.push_back(&p.find_variable(x)->domain);
    std::vector<std::size_t> idx(domains.size(), 0);
    while (true) {
      Tuple t;
      for (std::size_t k = 0; k < idx.size(); ++k) t.push_back((*domains[k])[idx[k]]);
      c.table.emplace(std::move(t), cost_for(system));
      std::size_t k = idx.size();
      while (k > 0) {
        --k;
        if (++idx[k] < domains[k]->size()) break;
        idx[k] = 0;
        if (k == 0) return;
      }
      if (idx.empty()) return;
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace dcopkit::testing
