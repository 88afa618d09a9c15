#include <doctest.h>

#include "../support/oracles.hpp"
#include "../support/random_problem.hpp"
#include "dcopkit/errors.hpp"
#include "dcopkit/model.hpp"
#include "dcopkit/nomenclature.hpp"

using namespace dcopkit;

namespace {

// x1, x2 over {1,2}; one public constraint |x1 - x2|; agent 1 owns x1, agent 2 owns x2.
Problem distance_problem() {
  Problem p;
  p.descriptor = decode("DisCOP");
  p.agents = {AgentId{1}, AgentId{2}};
  p.variables = {Variable{VariableId{1}, {1, 2}}, Variable{VariableId{2}, {1, 2}}};
  Constraint c{ConstraintId{1}, {VariableId{1}, VariableId{2}}, {}, Visibility::public_()};
  for (Value a : {1, 2})
    for (Value b : {1, 2}) c.table[{a, b}] = Cost(std::abs(a - b));
  p.constraints = {c};
  p.ownership.variables = {{VariableId{1}, {AgentId{1}}}, {VariableId{2}, {AgentId{2}}}};
  p.ownership.constraints = {{ConstraintId{1}, {AgentId{1}, AgentId{2}}}};
  p.outputs = open_outputs(p.agents, p.variables);
  return p;
}

Assignment asg(Value a, Value b) { return {{VariableId{1}, a}, {VariableId{2}, b}}; }

}  // namespace

TEST_CASE("a well-formed problem validates") {
  CHECK(validate_problem(distance_problem()).ok());
}

TEST_CASE("a missing table entry is reported") {
  Problem p = distance_problem();
  p.constraints[0].table.erase({2, 2});
  const auto report = validate_problem(p);
  CHECK(report.has("partial constraint table"));
}

TEST_CASE("closed descriptor with everything revealed is a mismatch") {
  Problem p = distance_problem();
  p.descriptor.x4 = Decision::Closed;
  CHECK(validate_problem(p).has("descriptor/output mismatch"));
  p.descriptor.x4 = Decision::Open;
  p.outputs.reveal_to[AgentId{1}].erase(VariableId{2});
  CHECK(validate_problem(p).has("descriptor/output mismatch"));
}

TEST_CASE("private binary constraints require Costs in the descriptor") {
  Problem p = distance_problem();
  p.constraints[0].visibility = Visibility::private_to({AgentId{2}});
  CHECK(validate_problem(p).has("descriptor/costs mismatch"));
  p.descriptor.x3.costs = true;
  CHECK(validate_problem(p).ok());
}

TEST_CASE("validation reports every violation") {
  Problem p = distance_problem();
  p.agents.push_back(AgentId{1});
  p.variables.push_back(Variable{VariableId{3}, {}});
  p.constraints[0].table[{1, 1}] = Cost(-2);
  p.bounds = {Cost(3), Cost(1)};
  p.privacy.domain_reveal_cost[{AgentId{9}, 1}] = Cost(1);
  const auto report = validate_problem(p);
  CHECK(report.has("duplicate agent"));
  CHECK(report.has("empty domain"));
  CHECK(report.has("missing owner"));
  CHECK(report.has("illegal cost"));
  CHECK(report.has("inverted bounds"));
  CHECK(report.has("unknown secret"));
}

TEST_CASE("evaluate_assignment examples") {
  Problem p = distance_problem();
  CHECK(evaluate_assignment(p, asg(1, 2)) == Evaluation{Cost(1), true});
  p.bounds = {Cost(0), Cost(0)};
  CHECK(evaluate_assignment(p, asg(1, 2)) == Evaluation{Cost(1), false});
  p.constraints.clear();
  p.ownership.constraints.clear();
  p.bounds = {};
  CHECK(evaluate_assignment(p, asg(2, 1)) == Evaluation{Cost(0), true});
}

TEST_CASE("partial or out-of-domain assignments are rejected") {
  const Problem p = distance_problem();
  CHECK_THROWS_AS(evaluate_assignment(p, {{VariableId{1}, 1}}), PreconditionError);
  CHECK_THROWS_AS(evaluate_assignment(p, asg(1, 7)), PreconditionError);
}

TEST_CASE("a hard violation is never acceptable") {
  Problem p = distance_problem();
  p.constraints[0].table[{1, 2}] = Cost::maximal();
  CHECK_FALSE(evaluate_assignment(p, asg(1, 2)).within_bounds);
  p.descriptor.x1 = ValueSystem::Probabilistic;
  CHECK_FALSE(acceptable(p, Cost(1)));
  CHECK(acceptable(p, Cost(Rational(99, 100))));
}

TEST_CASE("enumeration is lexicographic in declared domain order") {
  Problem p = distance_problem();
  p.variables[1].domain = {2, 1};
  std::vector<Assignment> seen;
  for_each_assignment(p, Budget{}, [&](const Assignment& a) { seen.push_back(a); });
  CHECK(seen == std::vector<Assignment>{asg(1, 2), asg(1, 1), asg(2, 2), asg(2, 1)});
  CHECK(search_space_size(p) == 4);
  CHECK_THROWS_AS(for_each_assignment(p, Budget{3}, [](const Assignment&) {}), ResourceError);
}

TEST_CASE("evaluation matches the brute-force oracle on random problems") {
  testing::ProblemGenerator gen(17);
  for (int i = 0; i < 150; ++i) {
    testing::GeneratorOptions o;
    o.system = std::vector{ValueSystem::Weighted, ValueSystem::Boolean, ValueSystem::Fuzzy,
                           ValueSystem::Probabilistic}[i % 4];
    o.random_bounds = true;
    o.random_privacy = true;
    const Problem p = gen.make(o);
    REQUIRE(validate_problem(p).ok());
    testing::brute_enumerate(p, [&](const Assignment& a) {
      const Evaluation e = evaluate_assignment(p, a);
      CHECK(e.cost == testing::brute_cost(p, a));
      CHECK(e.within_bounds == testing::brute_acceptable(p, e.cost));
    });
  }
}

TEST_CASE("knowers, owners and controller") {
  Problem p = distance_problem();
  p.ownership.variables[VariableId{2}] = {AgentId{2}, AgentId{1}};
  CHECK(p.controller(VariableId{2}) == AgentId{1});
  CHECK(p.knowers(p.constraints[0]).size() == 2);
  p.constraints[0].visibility = Visibility::private_to({AgentId{2}});
  CHECK_FALSE(p.knows(AgentId{1}, p.constraints[0]));
  CHECK(p.find_variable(VariableId{3}) == nullptr);
}
