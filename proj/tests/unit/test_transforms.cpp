#include <doctest.h>

#include <set>

#include "../support/oracles.hpp"
#include "../support/random_problem.hpp"
#include "dcopkit/errors.hpp"
#include "dcopkit/nomenclature.hpp"
#include "dcopkit/transforms.hpp"

using namespace dcopkit;

namespace {

Constraint table_constraint(std::int64_t id, std::vector<VariableId> scope,
                            std::map<Tuple, Cost> table, Visibility vis = Visibility::public_()) {
  return Constraint{ConstraintId{id}, std::move(scope), std::move(table), std::move(vis)};
}

// x1, x2 over {1,2}, two binary constraints, agent 1 owns everything.
Problem two_binary() {
  Problem p;
  p.agents = {AgentId{1}, AgentId{2}};
  p.variables = {Variable{VariableId{1}, {1, 2}}, Variable{VariableId{2}, {1, 2}}};
  const std::vector<VariableId> s{VariableId{1}, VariableId{2}};
  p.constraints = {
      table_constraint(1, s, {{{1, 1}, 1}, {{1, 2}, 2}, {{2, 1}, 3}, {{2, 2}, 4}}),
      table_constraint(2, {VariableId{2}, VariableId{1}},
                       {{{1, 1}, Cost(Rational(1, 2))}, {{1, 2}, 0}, {{2, 1}, 5}, {{2, 2}, 1}},
                       Visibility::private_to({AgentId{2}})),
  };
  p.ownership.variables = {{VariableId{1}, {AgentId{1}}}, {VariableId{2}, {AgentId{2}}}};
  p.ownership.constraints = {{ConstraintId{1}, {AgentId{1}}}, {ConstraintId{2}, {AgentId{2}}}};
  p.outputs = open_outputs(p.agents, p.variables);
  reconcile_descriptor(p);
  return p;
}

std::optional<Cost> optimum(const Problem& p) { return testing::brute_min(p); }

}  // namespace

TEST_CASE("merging two binary constraints sums them pointwise") {
  const Problem p = two_binary();
  REQUIRE(validate_problem(p).ok());
  const Problem m = merge_topology(p);
  REQUIRE(m.constraints.size() == 1);
  CHECK(validate_problem(m).ok());
  const auto& t = m.constraints[0].table;
  // c1(x1,x2) + c2(x2,x1)
  CHECK(t.at({1, 1}) == Cost(Rational(3, 2)));
  CHECK(t.at({1, 2}) == Cost(7));
  CHECK(t.at({2, 1}) == Cost(3));
  CHECK(t.at({2, 2}) == Cost(5));
  CHECK(m.constraints[0].visibility == Visibility::private_to({AgentId{2}}));
}

TEST_CASE("merging is idempotent and handles an empty constraint set") {
  const Problem once = merge_topology(two_binary());
  CHECK(merge_topology(once) == once);

  Problem empty = two_binary();
  empty.constraints.clear();
  empty.ownership.constraints.clear();
  reconcile_descriptor(empty);
  const Problem m = merge_topology(empty);
  REQUIRE(m.constraints.size() == 1);
  CHECK(m.constraints[0].table.size() == 4);
  for (const auto& [t, c] : m.constraints[0].table) CHECK(c == Cost(0));
}

TEST_CASE("merging respects the enumeration budget") {
  CHECK_THROWS_AS(merge_topology(two_binary(), Budget{3}), ResourceError);
}

TEST_CASE("merged problems evaluate identically on every tuple") {
  testing::ProblemGenerator gen(101);
  for (int i = 0; i < 100; ++i) {
    testing::GeneratorOptions o;
    o.system = i % 2 ? ValueSystem::Boolean : ValueSystem::Weighted;
    o.random_bounds = true;
    const Problem p = gen.make(o);
    const Problem m = merge_topology(p);
    CHECK(validate_problem(m).ok());
    testing::brute_enumerate(p, [&](const Assignment& a) {
      CHECK(evaluate_assignment(m, a) == evaluate_assignment(p, a));
    });
  }
}

TEST_CASE("dual conversion of a single constraint") {
  Problem p = two_binary();
  p.constraints.erase(p.constraints.begin());
  p.ownership.constraints.erase(ConstraintId{1});
  reconcile_descriptor(p);
  const Problem d = primal_dual_convert(p);
  CHECK(validate_problem(d).ok());
  CHECK(d.variables.size() == 1);
  CHECK(d.constraints.size() == 1);
  CHECK(d.descriptor.x3 == DistributionReason{true, false, false});
  CHECK(optimum(d) == optimum(p));
  // Labels index scope tuples (x2, x1) in declared order.
  CHECK(dual_label_tuple(p, p.constraints[0], 3) == Tuple{2, 1});
}

TEST_CASE("dual conversion of two constraints sharing variables preserves the optimum") {
  const Problem p = two_binary();
  const Problem d = primal_dual_convert(p);
  CHECK(validate_problem(d).ok());
  CHECK(d.constraints.size() == 3);
  CHECK(optimum(d) == optimum(p));
  CHECK(*optimum(p) == Cost(Rational(3, 2)));
}

TEST_CASE("an unsatisfiable Boolean problem stays unsatisfiable") {
  Problem p;
  p.descriptor = decode("DisD_CCSP");
  p.agents = {AgentId{1}};
  p.variables = {Variable{VariableId{1}, {1, 2}}, Variable{VariableId{2}, {1, 2}}};
  const Cost inf = Cost::maximal();
  const std::vector<VariableId> s{VariableId{1}, VariableId{2}};
  p.constraints = {table_constraint(1, s, {{{1, 1}, inf}, {{1, 2}, 0}, {{2, 1}, 0}, {{2, 2}, inf}},
                                    Visibility::private_to({AgentId{1}})),
                   table_constraint(2, s, {{{1, 1}, 0}, {{1, 2}, inf}, {{2, 1}, inf}, {{2, 2}, 0}})};
  p.ownership.variables = {{VariableId{1}, {AgentId{1}}}, {VariableId{2}, {AgentId{1}}}};
  p.ownership.constraints = {{ConstraintId{1}, {AgentId{1}}}, {ConstraintId{2}, {AgentId{1}}}};
  p.outputs = open_outputs(p.agents, p.variables);
  REQUIRE(validate_problem(p).ok());
  CHECK(optimum(p)->is_maximal());
  const Problem d = primal_dual_convert(p);
  CHECK(optimum(d)->is_maximal());
}

TEST_CASE("dual conversion requires cost distribution") {
  Problem p = two_binary();
  p.constraints[1].visibility = Visibility::public_();
  reconcile_descriptor(p);
  CHECK_THROWS_AS(primal_dual_convert(p), PreconditionError);
}

TEST_CASE("dual conversion preserves the optimum and the optimal assignments") {
  testing::ProblemGenerator gen(202);
  for (int i = 0; i < 100; ++i) {
    testing::GeneratorOptions o;
    o.system = i % 2 ? ValueSystem::Boolean : ValueSystem::Weighted;
    o.force_private_costs = true;
    o.max_variables = 4;
    Problem p = gen.make(o);
    if (!p.descriptor.x3.costs) continue;  // single variable: nothing to distribute
    const Problem d = primal_dual_convert(p);
    REQUIRE(validate_problem(d).ok());
    const Cost best = testing::brute_min(p);
    CHECK(testing::brute_min(d) == best);
    if (best == top(p.system())) continue;

    std::set<VariableId> covered;
    for (const Constraint& c : p.constraints) covered.insert(c.scope.begin(), c.scope.end());
    std::set<Assignment> primal_optima, dual_optima;
    testing::brute_enumerate(p, [&](const Assignment& a) {
      if (testing::brute_cost(p, a) != best) return;
      Assignment proj;
      for (VariableId x : covered) proj[x] = a.at(x);
      primal_optima.insert(proj);
    });
    testing::brute_enumerate(d, [&](const Assignment& a) {
      if (testing::brute_cost(d, a) == best) dual_optima.insert(recover_primal_assignment(p, a));
    });
    CHECK(primal_optima == dual_optima);
  }
}
