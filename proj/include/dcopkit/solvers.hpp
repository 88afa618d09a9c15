#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dcopkit/model.hpp"
#include "dcopkit/netsim.hpp"
#include "dcopkit/privacy.hpp"

namespace dcopkit {

struct Solution {
  Assignment assignment;
  Cost cost;
  bool within_bounds = true;

  friend bool operator==(const Solution&, const Solution&) = default;
};

// Throws UnsupportedObjective (Theil), UnsupportedFramework (dynamic or
// cryptographic descriptors) or PreconditionError (invalid problem).
void require_solvable(const Problem& p);

// Exhaustive search in lexicographic order; the first tuple reaching the
// optimum wins. Only the optimum is tested against the quality bounds, so a
// worse tuple inside the bounds is never returned.
std::optional<Solution> oracle_solve(const Problem& p, const Budget& budget = {});

struct StegPolicyConfig {
  enum class Lookahead { Myopic };

  bool enabled = false;
  Lookahead lookahead = Lookahead::Myopic;
};

// Synchronous branch and bound over the agents that control variables, in
// ascending id order. Private constraints an extending agent cannot evaluate
// are priced by their smallest-id knower through a CPA/CostReport exchange.
ProtocolRun make_syncbb(const Problem& p, StegPolicyConfig steg);
Transcript syncbb_solve(const Problem& p, StegPolicyConfig steg, std::uint64_t seed = 0);

// Every agent sends every domain value (CPA) and private entry (CostReport)
// to every other agent; the smallest-id agent then announces the oracle
// solution with Solution messages.
ProtocolRun make_broadcast_all(const Problem& p);

// A trusted mediator delivers each agent its requested outputs and nothing
// else.
ProtocolRun make_ideal(const Problem& p);

// syncbb, syncbb-steg, broadcast, ideal.
const ProtocolRegistry& default_registry();

// With the given probability a Solved status becomes NoSolution. Messages are
// kept. Throws DomainError outside [0,1].
Transcript hide_existence_filter(Transcript t, const Rational& discard_probability,
                                 std::uint64_t seed);

// Appends one OutputDelivery per agent other than the decision holder,
// carrying the projection of the solution onto that agent's reveal_to set.
Transcript distribute_decision(Transcript t, const OutputMapping& outputs);

// The myopic rationality test an agent applies before each send: refuse when
// (already incurred + newly revealed) privacy cost reaches the reward.
class StegGate final : public SendGate {
 public:
  explicit StegGate(const Problem& p) : p_(p) {}
  bool permit(const Message& pending) override;

 private:
  struct Ledger {
    std::set<SecretId> revealed;
    Cost incurred;
  };
  const Problem& p_;
  std::map<AgentId, Ledger> ledgers_;
};

struct RationalityBreach {
  std::uint64_t seq;
  AgentId agent;
  Cost reward;
  Cost incurred_plus_marginal;
};

// Replays every performed send against the steganographic policy and
// returns the first send where reward - (incurred + marginal) > 0 failed.
std::optional<RationalityBreach> replay_rationality(const Problem& p, const Transcript& t);

}  // namespace dcopkit
