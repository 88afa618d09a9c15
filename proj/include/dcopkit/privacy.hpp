#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dcopkit/model.hpp"
#include "dcopkit/netsim.hpp"

namespace dcopkit {

// A Boolean proposition an agent keeps secret: "value is in the domain of
// variable" or "this constraint entry has its cost".
struct SecretId {
  enum class Kind { DomainMembership, ConstraintEntry };

  Kind kind = Kind::DomainMembership;
  AgentId agent;
  VariableId variable;
  Value value = 0;
  ConstraintId constraint;
  Tuple tuple;

  static SecretId domain_membership(AgentId agent, VariableId variable, Value value) {
    return {Kind::DomainMembership, agent, variable, value, {}, {}};
  }
  static SecretId constraint_entry(AgentId agent, ConstraintId constraint, Tuple tuple) {
    return {Kind::ConstraintEntry, agent, {}, 0, constraint, std::move(tuple)};
  }

  std::string str() const;
  friend auto operator<=>(const SecretId&, const SecretId&) = default;
};

// (observer, secret) -> probability the observer learned it. Absent means 0.
struct Revelation {
  std::map<std::pair<AgentId, SecretId>, Rational> prob;

  Rational probability(AgentId observer, const SecretId& s) const;
  // Maximum over observers.
  Rational exposure(const SecretId& s) const;

  friend bool operator==(const Revelation&, const Revelation&) = default;
};

// Secrets a single message discloses to its receiver, with certainty.
//   CPA / Solution carrying x=v: DomainMembership(o, x, v) for each owner o
//     of x other than the receiver.
//   CostReport: ConstraintEntry(sender, c, tuple) when the report is
//     attributable to c: the payload names c, or the sender owns exactly one
//     private constraint covered by the payload assignment. Nothing is
//     revealed to receivers that already know c.
//   Everything else: nothing.
// Throws CorruptTranscript for unknown agents, variables or constraints.
std::vector<SecretId> secrets_revealed(const Problem& p, const Message& m);

Revelation extract_revelations(const Transcript& t, const Problem& p);

// Cost the agent attaches to the secret (domain u or entry cost); secrets of
// other agents cost it nothing.
Cost secret_cost(const PrivacyCostModel& model, AgentId agent, const SecretId& s);

// Sum over the agent's secrets of exposure x configured cost.
Cost privacy_loss(const Revelation& r, const PrivacyCostModel& model, AgentId agent);

struct DpcopBreakdown {
  Cost public_cost;
  std::map<AgentId, Cost> private_cost;  // constraints attributed to the agent
  std::map<AgentId, Cost> loss;
  Cost total;
};

// Each private constraint is attributed to its smallest-id owner so the
// constraint part sums to evaluate_assignment. Throws PreconditionError
// unless the transcript is Solved.
DpcopBreakdown dpcop_breakdown(const Problem& p, const Transcript& t);
Cost dpcop_total_cost(const Problem& p, const Transcript& t);

}  // namespace dcopkit
