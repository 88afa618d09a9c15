#include "dcopkit/privacy.hpp"

#include <algorithm>

#include "dcopkit/errors.hpp"

namespace dcopkit {

std::string SecretId::str() const {
  if (kind == Kind::DomainMembership)
    return "DomainMembership(a" + std::to_string(agent.value) + ", x" +
           std::to_string(variable.value) + ", " + std::to_string(value) + ")";
  std::string t;
  for (Value v : tuple) t += (t.empty() ? "" : ",") + std::to_string(v);
  return "ConstraintEntry(a" + std::to_string(agent.value) + ", c" +
         std::to_string(constraint.value) + ", (" + t + "))";
}

Rational Revelation::probability(AgentId observer, const SecretId& s) const {
  auto it = prob.find({observer, s});
  return it == prob.end() ? Rational(0) : it->second;
}

Rational Revelation::exposure(const SecretId& s) const {
  Rational best = 0;
  for (const auto& [key, p] : prob)
    if (key.second == s && p > best) best = p;
  return best;
}

namespace {

void require_agent(const Problem& p, AgentId a, const Message& m) {
  if (a == kMediator) return;
  if (std::find(p.agents.begin(), p.agents.end(), a) == p.agents.end())
    throw CorruptTranscript("message " + std::to_string(m.seq) + " references unknown agent " +
                            std::to_string(a.value));
}

}  // namespace

std::vector<SecretId> secrets_revealed(const Problem& p, const Message& m) {
  require_agent(p, m.sender, m);
  require_agent(p, m.receiver, m);
  for (const auto& [x, v] : m.payload.assignment)
    if (!p.find_variable(x))
      throw CorruptTranscript("message " + std::to_string(m.seq) + " references unknown variable " +
                              std::to_string(x.value));
  const Constraint* named = nullptr;
  if (m.payload.constraint) {
    named = p.find_constraint(*m.payload.constraint);
    if (!named)
      throw CorruptTranscript("message " + std::to_string(m.seq) +
                              " references unknown constraint " +
                              std::to_string(m.payload.constraint->value));
  }

  std::vector<SecretId> out;
  switch (m.kind) {
    case MessageKind::CPA:
    case MessageKind::Solution:
      for (const auto& [x, v] : m.payload.assignment)
        for (AgentId owner : p.owners(x))
          if (owner != m.receiver) out.push_back(SecretId::domain_membership(owner, x, v));
      break;
    case MessageKind::CostReport: {
      const Constraint* subject = nullptr;
      auto attributable = [&](const Constraint& c) {
        return !c.visibility.is_public && p.owners(c.id).contains(m.sender) &&
               covers(m.payload.assignment, c.scope);
      };
      if (named) {
        if (attributable(*named)) subject = named;
      } else {
        for (const Constraint& c : p.constraints) {
          if (!attributable(c)) continue;
          if (subject) {
            subject = nullptr;
            break;
          }
          subject = &c;
        }
      }
      if (subject && !p.knows(m.receiver, *subject))
        out.push_back(SecretId::constraint_entry(m.sender, subject->id,
                                                 project(m.payload.assignment, subject->scope)));
      break;
    }
    default:
      break;
  }
  return out;
}

Revelation extract_revelations(const Transcript& t, const Problem& p) {
  Revelation r;
  for (const Message& m : t.messages) {
    for (SecretId& s : secrets_revealed(p, m)) {
      Rational& slot = r.prob[{m.receiver, std::move(s)}];
      slot = std::max(slot, Rational(1));
    }
  }
  return r;
}

Cost secret_cost(const PrivacyCostModel& model, AgentId agent, const SecretId& s) {
  if (s.agent != agent) return Cost{};
  if (s.kind == SecretId::Kind::DomainMembership) return model.domain_cost(agent, s.value);
  return model.entry_cost(agent, EntryId{s.constraint, s.tuple});
}

Cost privacy_loss(const Revelation& r, const PrivacyCostModel& model, AgentId agent) {
  std::map<SecretId, Rational> exposure;
  for (const auto& [key, p] : r.prob) {
    if (key.second.agent != agent) continue;
    Rational& e = exposure[key.second];
    e = std::max(e, p);
  }
  Cost total;
  for (const auto& [secret, p] : exposure) total += secret_cost(model, agent, secret).scaled(p);
  return total;
}

DpcopBreakdown dpcop_breakdown(const Problem& p, const Transcript& t) {
  const Solved* solved = t.solved();
  if (!solved) throw PreconditionError("DPCOP cost needs a Solved transcript");
  const auto costs = constraint_costs(p, solved->assignment);
  const ValueSystem system = p.system();

  std::vector<Cost> public_costs;
  std::map<AgentId, std::vector<Cost>> private_costs;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const Constraint& c = p.constraints[i];
    if (c.visibility.is_public)
      public_costs.push_back(costs[i]);
    else
      private_costs[*p.owners(c.id).begin()].push_back(costs[i]);
  }

  DpcopBreakdown out;
  out.public_cost = aggregate(public_costs, system);
  std::vector<Cost> parts{out.public_cost};
  const Revelation r = extract_revelations(t, p);
  Cost losses;
  for (AgentId a : p.agents) {
    out.private_cost[a] = aggregate(private_costs[a], system);
    parts.push_back(out.private_cost[a]);
    out.loss[a] = privacy_loss(r, p.privacy, a);
    losses += out.loss[a];
  }
  out.total = aggregate(parts, system) + losses;
  return out;
}

Cost dpcop_total_cost(const Problem& p, const Transcript& t) { return dpcop_breakdown(p, t).total; }

}  // namespace dcopkit
