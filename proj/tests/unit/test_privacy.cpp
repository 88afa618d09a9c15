#include <doctest.h>

#include "../support/random_problem.hpp"
#include "dcopkit/errors.hpp"
#include "dcopkit/nomenclature.hpp"
#include "dcopkit/privacy.hpp"
#include "dcopkit/solvers.hpp"

using namespace dcopkit;

namespace {

const AgentId a1{1}, a2{2}, a3{3};
const VariableId x1{1}, x2{2};

// a1 owns x1, a2 owns x2, both over {1,2}. Constraint 1 is public; constraint
// 2 is private to a2.
Problem base() {
  Problem p;
  p.descriptor = decode("DisD_CCOP");
  p.agents = {a1, a2, a3};
  p.variables = {Variable{x1, {1, 2}}, Variable{x2, {1, 2}}};
  Constraint pub{ConstraintId{1}, {x1, x2}, {}, Visibility::public_()};
  Constraint priv{ConstraintId{2}, {x1, x2}, {}, Visibility::private_to({a2})};
  for (Value a : {1, 2})
    for (Value b : {1, 2}) {
      pub.table[{a, b}] = Cost(a + b);
      priv.table[{a, b}] = Cost(a * b);
    }
  p.constraints = {pub, priv};
  p.ownership.variables = {{x1, {a1}}, {x2, {a2}}};
  p.ownership.constraints = {{ConstraintId{1}, {a1}}, {ConstraintId{2}, {a2}}};
  p.outputs = open_outputs(p.agents, p.variables);
  return p;
}

Message msg(std::uint64_t seq, AgentId from, AgentId to, MessageKind kind, Assignment a = {},
            std::optional<ConstraintId> c = std::nullopt) {
  return Message{seq, from, to, kind, Payload{std::move(a), std::nullopt, {}, c}};
}

Transcript solved(std::vector<Message> messages, Assignment a, const Problem& p) {
  Transcript t;
  t.messages = std::move(messages);
  t.status = Solved{a, evaluate_assignment(p, a).cost, a1};
  return t;
}

}  // namespace

TEST_CASE("an empty transcript reveals nothing") {
  CHECK(extract_revelations(Transcript{}, base()).prob.empty());
}

TEST_CASE("a CPA reveals domain membership to its receiver") {
  const Problem p = base();
  Transcript t;
  t.messages = {msg(0, a1, a2, MessageKind::CPA, {{x1, 2}})};
  const Revelation r = extract_revelations(t, p);
  CHECK(r.prob.size() == 1);
  CHECK(r.probability(a2, SecretId::domain_membership(a1, x1, 2)) == 1);
  CHECK(r.probability(a3, SecretId::domain_membership(a1, x1, 2)) == 0);

  Transcript twice = t;
  twice.messages.push_back(msg(1, a1, a2, MessageKind::CPA, {{x1, 2}}));
  CHECK(extract_revelations(twice, p) == r);
}

TEST_CASE("owners learn nothing about their own values") {
  const Problem p = base();
  CHECK(secrets_revealed(p, msg(0, a2, a1, MessageKind::Solution, {{x1, 1}, {x2, 2}})) ==
        std::vector<SecretId>{SecretId::domain_membership(a2, x2, 2)});
}

TEST_CASE("cost reports reveal an attributable entry") {
  const Problem p = base();
  const auto named = secrets_revealed(
      p, msg(0, a2, a1, MessageKind::CostReport, {{x1, 1}, {x2, 2}}, ConstraintId{2}));
  CHECK(named == std::vector<SecretId>{SecretId::constraint_entry(a2, ConstraintId{2}, {1, 2})});
  // Unnamed but unique: a2 owns exactly one covered private constraint.
  CHECK(secrets_revealed(p, msg(0, a2, a1, MessageKind::CostReport, {{x1, 1}, {x2, 2}})) == named);
  // Partial assignments and public constraints reveal no entry.
  CHECK(secrets_revealed(p, msg(0, a2, a1, MessageKind::CostReport, {{x1, 1}})).empty());
  CHECK(secrets_revealed(
            p, msg(0, a1, a2, MessageKind::CostReport, {{x1, 1}, {x2, 2}}, ConstraintId{1}))
            .empty());
  for (auto kind : {MessageKind::Backtrack, MessageKind::Bound, MessageKind::Abandon,
                    MessageKind::OutputDelivery})
    CHECK(secrets_revealed(p, msg(0, a1, a2, kind, {{x1, 1}})).empty());
}

TEST_CASE("references to unknown elements are corrupt") {
  const Problem p = base();
  CHECK_THROWS_AS(secrets_revealed(p, msg(0, a1, a2, MessageKind::CPA, {{VariableId{9}, 1}})),
                  CorruptTranscript);
  CHECK_THROWS_AS(secrets_revealed(p, msg(0, AgentId{7}, a2, MessageKind::CPA)), CorruptTranscript);
  CHECK_THROWS_AS(
      secrets_revealed(p, msg(0, a1, a2, MessageKind::CostReport, {}, ConstraintId{9})),
      CorruptTranscript);
}

TEST_CASE("privacy loss examples") {
  PrivacyCostModel model;
  CHECK(privacy_loss(Revelation{}, model, a1) == Cost(0));

  const SecretId s1 = SecretId::domain_membership(a1, x1, 1);
  const SecretId s2 = SecretId::domain_membership(a1, x1, 2);
  model.domain_reveal_cost[{a1, 1}] = Cost(5);
  Revelation r;
  r.prob[{a2, s1}] = 1;
  CHECK(privacy_loss(r, model, a1) == Cost(5));

  model.domain_reveal_cost[{a1, 1}] = Cost(4);
  model.domain_reveal_cost[{a1, 2}] = Cost(6);
  r.prob[{a2, s2}] = Rational(1, 4);
  r.prob[{a3, s2}] = Rational(1, 2);  // the most informed observer counts
  CHECK(privacy_loss(r, model, a1) == Cost(7));
  CHECK(privacy_loss(r, model, a2) == Cost(0));
  CHECK(r.exposure(s2) == Rational(1, 2));
}

TEST_CASE("privacy loss is non-negative and monotone in probabilities") {
  testing::ProblemGenerator gen(8);
  for (int i = 0; i < 100; ++i) {
    PrivacyCostModel model;
    Revelation low, high;
    for (int k = 0; k < 4; ++k) {
      const Value v = static_cast<Value>(gen.below(3));
      model.domain_reveal_cost[{a1, v}] = gen.rational_cost();
      const SecretId s = SecretId::domain_membership(a1, x1, v);
      const auto q = static_cast<long>(gen.below(4));
      low.prob[{a2, s}] = Rational(q, 4);
      high.prob[{a2, s}] = Rational(q + static_cast<long>(gen.below(static_cast<std::size_t>(5 - q))), 4);
    }
    const Cost l = privacy_loss(low, model, a1);
    CHECK(Cost(0) <= l);
    CHECK(l <= privacy_loss(high, model, a1));
  }
}

TEST_CASE("DPCOP totals") {
  Problem p = base();
  const Assignment eps{{x1, 1}, {x2, 2}};
  // Public 3 plus private 2.
  CHECK(dpcop_total_cost(p, solved({}, eps, p)) == evaluate_assignment(p, eps).cost);
  CHECK(dpcop_total_cost(p, solved({}, eps, p)) == Cost(5));

  p.privacy.domain_reveal_cost[{a1, 1}] = Cost(2);
  const Transcript t = solved({msg(0, a1, a2, MessageKind::CPA, {{x1, 1}})}, eps, p);
  const DpcopBreakdown b = dpcop_breakdown(p, t);
  CHECK(b.public_cost == Cost(3));
  CHECK(b.private_cost.at(a2) == Cost(2));
  CHECK(b.loss.at(a1) == Cost(2));
  CHECK(b.total == Cost(7));

  p.privacy = {};
  CHECK(dpcop_total_cost(p, t) == Cost(5));

  Transcript unsolved;
  CHECK_THROWS_AS(dpcop_total_cost(p, unsolved), PreconditionError);
}

TEST_CASE("DPCOP totals decompose on solver transcripts") {
  testing::ProblemGenerator gen(41);
  for (int i = 0; i < 120; ++i) {
    testing::GeneratorOptions o;
    o.random_privacy = true;
    o.force_private_costs = true;
    const Problem p = gen.make(o);
    for (const char* protocol : {"syncbb", "broadcast"}) {
      Transcript t = run(p, protocol, 0, default_registry());
      if (!t.solved()) continue;
      t = distribute_decision(t, p.outputs);
      const Revelation r = extract_revelations(t, p);
      Cost expected = evaluate_assignment(p, t.solved()->assignment).cost;
      for (AgentId a : p.agents) expected += privacy_loss(r, p.privacy, a);
      CHECK(dpcop_total_cost(p, t) == expected);
    }
  }
}

TEST_CASE("longer transcripts never reveal less") {
  testing::ProblemGenerator gen(43);
  for (int i = 0; i < 40; ++i) {
    testing::GeneratorOptions o;
    o.force_private_costs = true;
    const Problem p = gen.make(o);
    const Transcript full = run(p, "broadcast", 0, default_registry());
    Transcript prefix;
    Revelation previous;
    for (const Message& m : full.messages) {
      prefix.messages.push_back(m);
      const Revelation now = extract_revelations(prefix, p);
      for (const auto& [key, prob] : previous.prob) CHECK(now.probability(key.first, key.second) >= prob);
      previous = now;
    }
  }
}
