#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dcopkit/ids.hpp"
#include "dcopkit/valuation.hpp"

namespace dcopkit {

struct Variable {
  VariableId id;
  std::vector<Value> domain;  // declared order is the enumeration order

  friend bool operator==(const Variable&, const Variable&) = default;
};

using Tuple = std::vector<Value>;

// Public constraints are known to every agent; private ones only to `agents`.
struct Visibility {
  bool is_public = true;
  std::set<AgentId> agents;

  static Visibility public_() { return {}; }
  static Visibility private_to(std::set<AgentId> agents) { return {false, std::move(agents)}; }

  friend bool operator==(const Visibility&, const Visibility&) = default;
};

struct Constraint {
  ConstraintId id;
  std::vector<VariableId> scope;
  std::map<Tuple, Cost> table;
  Visibility visibility;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct OwnershipMapping {
  std::map<VariableId, std::set<AgentId>> variables;
  std::map<ConstraintId, std::set<AgentId>> constraints;

  friend bool operator==(const OwnershipMapping&, const OwnershipMapping&) = default;
};

// Identifies one cell of a constraint table.
struct EntryId {
  ConstraintId constraint;
  Tuple tuple;

  friend auto operator<=>(const EntryId&, const EntryId&) = default;
};

// Linear privacy pricing: each revealed secret costs its configured amount
// scaled by the probability it was revealed.
struct PrivacyCostModel {
  // u_{i,j}: agent i's cost for revealing whether value j is in its domain.
  std::map<std::pair<AgentId, Value>, Cost> domain_reveal_cost;
  // Cost to the agent of revealing one of its constraint entries. Also holds
  // the foregone steganographic reward for keeping that entry hidden.
  std::map<std::pair<AgentId, EntryId>, Cost> entry_reveal_cost;
  // Reward received when an agreement is reached. Absent means maximal.
  std::map<AgentId, Cost> agreement_reward;

  Cost domain_cost(AgentId agent, Value value) const;
  Cost entry_cost(AgentId agent, const EntryId& entry) const;
  Cost reward(AgentId agent) const;

  friend bool operator==(const PrivacyCostModel&, const PrivacyCostModel&) = default;
};

struct QualityBounds {
  std::optional<Cost> lower;
  std::optional<Cost> upper;

  bool contains(const Cost& c) const {
    return (!lower || *lower <= c) && (!upper || c <= *upper);
  }

  friend bool operator==(const QualityBounds&, const QualityBounds&) = default;
};

// Which final assignments each agent receives. Every agent has an entry.
struct OutputMapping {
  std::map<AgentId, std::set<VariableId>> reveal_to;

  friend bool operator==(const OutputMapping&, const OutputMapping&) = default;
};

enum class Structure { Static, DynamicLocal, DynamicTopology };
enum class Decision { Open, Closed };
enum class PrivacyManagement { Public, Quantified, Steganographic, Cryptographic };

// Non-empty subset of {Domains, Variables, Costs}.
struct DistributionReason {
  bool domains = true;
  bool variables = false;
  bool costs = false;

  bool empty() const { return !domains && !variables && !costs; }
  friend auto operator<=>(const DistributionReason&, const DistributionReason&) = default;
};

struct FrameworkDescriptor {
  ValueSystem x1 = ValueSystem::Weighted;
  Structure x2 = Structure::Static;
  DistributionReason x3;
  Decision x4 = Decision::Open;
  PrivacyManagement x5 = PrivacyManagement::Public;
  Objective x6 = Objective::Utilitarian;

  friend auto operator<=>(const FrameworkDescriptor&, const FrameworkDescriptor&) = default;
};

using Assignment = std::map<VariableId, Value>;

struct Problem {
  std::vector<AgentId> agents;
  std::vector<Variable> variables;  // sorted by id
  std::vector<Constraint> constraints;  // sorted by id
  OwnershipMapping ownership;
  PrivacyCostModel privacy;
  QualityBounds bounds;
  OutputMapping outputs;
  FrameworkDescriptor descriptor;

  ValueSystem system() const { return descriptor.x1; }
  const Variable* find_variable(VariableId id) const;
  const Constraint* find_constraint(ConstraintId id) const;
  // Agents that can evaluate the constraint: everyone for public ones.
  std::set<AgentId> knowers(const Constraint& c) const;
  bool knows(AgentId agent, const Constraint& c) const;
  std::set<AgentId> owners(VariableId id) const;
  std::set<AgentId> owners(ConstraintId id) const;
  // Smallest-id owner; the only agent that proposes values for the variable.
  AgentId controller(VariableId id) const;

  friend bool operator==(const Problem&, const Problem&) = default;
};

// Evaluation and enumeration limits.
struct Budget {
  std::size_t max_tuples = 1'000'000;
};

struct Violation {
  std::string code;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view code) const;
};

// Checks every structural invariant plus descriptor/content consistency.
// All violations are reported.
ValidationReport validate_problem(const Problem& p);

// Open iff every agent receives every variable.
bool is_open(const OutputMapping& outputs, const Problem& p);
OutputMapping open_outputs(const std::vector<AgentId>& agents,
                           const std::vector<Variable>& variables);

// Projection of a full assignment onto a constraint scope.
Tuple project(const Assignment& a, const std::vector<VariableId>& scope);
bool covers(const Assignment& a, const std::vector<VariableId>& scope);

struct Evaluation {
  Cost cost;
  bool within_bounds = false;

  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

// A hard violation (top of the value system) is never within bounds.
bool acceptable(const Problem& p, const Cost& c);

// Per-constraint costs in constraint order; throws PreconditionError on a
// partial assignment or a value outside a domain.
std::vector<Cost> constraint_costs(const Problem& p, const Assignment& full);
Evaluation evaluate_assignment(const Problem& p, const Assignment& full);

// Total number of full tuples, saturating at SIZE_MAX.
std::size_t search_space_size(const Problem& p);

// Calls `visit` for every full assignment in lexicographic order (variables
// by id, values in declared order). Throws ResourceError above the budget.
template <typename Visit>
void for_each_assignment(const Problem& p, const Budget& budget, Visit&& visit);

}  // namespace dcopkit

#include "dcopkit/detail/enumerate.hpp"
