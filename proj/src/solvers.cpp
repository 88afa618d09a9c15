#include "dcopkit/solvers.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

#include "dcopkit/errors.hpp"
#include "dcopkit/nomenclature.hpp"

namespace dcopkit {

void require_solvable(const Problem& p) {
  require_supported(p.descriptor.x6);
  if (p.descriptor.x2 != Structure::Static)
    throw UnsupportedFramework("dynamic problems (x2=" + std::string(name(p.descriptor.x2)) +
                               ") cannot be solved");
  if (p.descriptor.x5 == PrivacyManagement::Cryptographic)
    throw UnsupportedFramework("cryptographic privacy management is not supported by the solvers");
  const auto report = validate_problem(p);
  if (!report.ok()) {
    std::string text = "invalid problem:";
    for (const auto& v : report.violations) text += " [" + v.code + ": " + v.detail + "]";
    throw PreconditionError(text);
  }
}

std::optional<Solution> oracle_solve(const Problem& p, const Budget& budget) {
  require_solvable(p);
  const Objective objective = p.descriptor.x6;
  const ValueSystem system = p.system();

  std::optional<Assignment> best;
  std::vector<Cost> best_costs;
  for_each_assignment(p, budget, [&](const Assignment& a) {
    auto costs = constraint_costs(p, a);
    if (!best || compare(costs, best_costs, objective, system) < 0) {
      best = a;
      best_costs = std::move(costs);
    }
  });
  if (!best) return std::nullopt;
  Cost cost = aggregate(best_costs, system);
  if (!acceptable(p, cost)) return std::nullopt;
  return Solution{*best, std::move(cost), true};
}

namespace {

// Static facts every SyncBB agent derives from its own knowledge of the
// protocol setup: the agent order and which variables each agent extends.
struct ChainLayout {
  std::vector<AgentId> chain;
  std::map<AgentId, std::vector<VariableId>> block;
  std::map<VariableId, std::size_t> position;  // chain index of the controller

  explicit ChainLayout(const Problem& p) {
    for (const Variable& v : p.variables) block[p.controller(v.id)].push_back(v.id);
    for (const auto& [agent, vars] : block) chain.push_back(agent);
    for (std::size_t i = 0; i < chain.size(); ++i)
      for (VariableId x : block[chain[i]]) position[x] = i;
  }
};

class SyncBBAgent final : public AgentProgram {
 public:
  SyncBBAgent(const Problem& p, std::shared_ptr<const ChainLayout> layout, AgentId self)
      : p_(p), layout_(std::move(layout)), self_(self) {
    const auto& chain = layout_->chain;
    auto it = std::find(chain.begin(), chain.end(), self_);
    if (it != chain.end()) {
      index_ = static_cast<std::size_t>(it - chain.begin());
      for (VariableId x : layout_->block.at(self_)) local_.push_back(p_.find_variable(x));
    }
    leximin_ = p_.descriptor.x6 == Objective::Leximin;
  }

  void start(AgentContext& ctx) override {
    if (index_ && *index_ == 0) begin({}, Cost{}, {}, ctx);
  }

  void receive(const Message& m, AgentContext& ctx) override {
    switch (m.kind) {
      case MessageKind::CPA:
        if (m.payload.constraint)
          answer(m, ctx);
        else
          begin(m.payload.assignment, m.payload.cost.value_or(Cost{}), m.payload.cost_vector, ctx);
        break;
      case MessageKind::CostReport:
        add_cost(m.payload.cost.value_or(Cost{}));
        pending_.pop_front();
        advance(ctx);
        break;
      case MessageKind::Backtrack:
        advance(ctx);
        break;
      case MessageKind::Bound:
        best_ = m.payload.cost;
        best_vector_ = m.payload.cost_vector;
        break;
      default:
        break;
    }
  }

  // Best complete assignment found; only meaningful on the last chain agent.
  const std::optional<Assignment>& best_assignment() const { return best_assignment_; }
  const std::optional<Cost>& best_cost() const { return best_; }

 private:
  void answer(const Message& m, AgentContext& ctx) {
    const Constraint* c = p_.find_constraint(*m.payload.constraint);
    if (!c || !p_.knows(self_, *c))
      throw ContractError("agent " + std::to_string(self_.value) +
                          " asked to price a constraint it does not know");
    Payload reply;
    reply.assignment = m.payload.assignment;
    reply.cost = c->table.at(project(m.payload.assignment, c->scope));
    reply.constraint = c->id;
    ctx.send(m.sender, MessageKind::CostReport, std::move(reply));
  }

  void begin(Assignment base, Cost acc, std::vector<Cost> vec, AgentContext& ctx) {
    base_ = std::move(base);
    base_cost_ = std::move(acc);
    base_vector_ = std::move(vec);
    odometer_.clear();
    pending_.clear();
    has_candidate_ = false;
    advance(ctx);
  }

  void add_cost(const Cost& c) {
    const Cost parts[] = {cost_, c};
    cost_ = aggregate(parts, p_.system());
    if (leximin_) vector_.push_back(c);
  }

  bool dominated() const {
    if (cost_ == top(p_.system())) return true;
    if (!leximin_) {
      if (p_.bounds.upper && *p_.bounds.upper < cost_) return true;
      return best_ && *best_ <= cost_;
    }
    if (!best_) return false;
    std::vector<Cost> padded = vector_;
    padded.resize(p_.constraints.size(), Cost{});
    std::vector<Cost> best = best_vector_;
    best.resize(p_.constraints.size(), Cost{});
    return compare(padded, best, Objective::Leximin, p_.system()) >= 0;
  }

  // Moves to the next local extension in lexicographic order.
  bool next_extension() {
    if (odometer_.empty()) {
      odometer_.assign(local_.size(), 0);
    } else {
      std::size_t pos = local_.size();
      while (true) {
        if (pos == 0) return false;
        --pos;
        if (++odometer_[pos] < local_[pos]->domain.size()) break;
        odometer_[pos] = 0;
      }
    }
    candidate_ = base_;
    for (std::size_t i = 0; i < local_.size(); ++i)
      candidate_[local_[i]->id] = local_[i]->domain[odometer_[i]];
    cost_ = base_cost_;
    vector_ = base_vector_;
    for (const Constraint& c : p_.constraints) {
      if (!covers(candidate_, c.scope) || covers(base_, c.scope)) continue;
      if (p_.knows(self_, c))
        add_cost(c.table.at(project(candidate_, c.scope)));
      else
        pending_.push_back(&c);
    }
    has_candidate_ = true;
    return true;
  }

  void advance(AgentContext& ctx) {
    const auto& chain = layout_->chain;
    while (!ctx.terminated()) {
      if (!pending_.empty()) {
        if (dominated()) {
          pending_.clear();
        } else {
          const Constraint& c = *pending_.front();
          Payload request;
          for (VariableId x : c.scope) request.assignment[x] = candidate_.at(x);
          request.constraint = c.id;
          ctx.send(*c.visibility.agents.begin(), MessageKind::CPA, std::move(request));
          return;
        }
      }
      if (has_candidate_) {
        has_candidate_ = false;
        if (!dominated()) {
          if (*index_ + 1 == chain.size()) {
            best_ = cost_;
            best_vector_ = vector_;
            best_assignment_ = candidate_;
            for (AgentId a : chain) {
              if (a == self_) continue;
              Payload bound;
              bound.cost = cost_;
              if (leximin_) bound.cost_vector = vector_;
              ctx.send(a, MessageKind::Bound, std::move(bound));
            }
          } else {
            Payload cpa;
            cpa.assignment = candidate_;
            cpa.cost = cost_;
            if (leximin_) cpa.cost_vector = vector_;
            ctx.send(chain[*index_ + 1], MessageKind::CPA, std::move(cpa));
            return;
          }
        }
      }
      if (!next_extension()) {
        if (*index_ > 0) ctx.send(chain[*index_ - 1], MessageKind::Backtrack, {});
        return;
      }
    }
  }

  const Problem& p_;
  std::shared_ptr<const ChainLayout> layout_;
  AgentId self_;
  std::optional<std::size_t> index_;
  std::vector<const Variable*> local_;
  bool leximin_ = false;

  Assignment base_;
  Cost base_cost_;
  std::vector<Cost> base_vector_;
  std::vector<std::size_t> odometer_;
  Assignment candidate_;
  Cost cost_;
  std::vector<Cost> vector_;
  bool has_candidate_ = false;
  std::deque<const Constraint*> pending_;

  std::optional<Cost> best_;
  std::vector<Cost> best_vector_;
  std::optional<Assignment> best_assignment_;
};

}  // namespace

ProtocolRun make_syncbb(const Problem& p, StegPolicyConfig steg) {
  require_solvable(p);
  auto layout = std::make_shared<const ChainLayout>(p);
  ProtocolRun run;
  std::map<AgentId, SyncBBAgent*> agents;
  for (AgentId a : p.agents) {
    auto program = std::make_unique<SyncBBAgent>(p, layout, a);
    agents[a] = program.get();
    run.programs[a] = std::move(program);
  }
  if (steg.enabled) run.gate = std::make_unique<StegGate>(p);
  const SyncBBAgent* last = agents.at(layout->chain.back());
  const AgentId holder = layout->chain.back();
  run.outcome = [&p, last, holder]() -> TerminalStatus {
    if (!last->best_assignment()) return NoSolution{};
    const Cost& cost = *last->best_cost();
    if (!acceptable(p, cost)) return NoSolution{};
    return Solved{*last->best_assignment(), cost, holder};
  };
  return run;
}

Transcript syncbb_solve(const Problem& p, StegPolicyConfig steg, std::uint64_t /*seed*/) {
  return simulate(make_syncbb(p, steg), p.agents);
}

namespace {

class BroadcastAgent final : public AgentProgram {
 public:
  BroadcastAgent(const Problem& p, AgentId self, std::optional<Solution> solution)
      : p_(p), self_(self), solution_(std::move(solution)) {}

  void start(AgentContext& ctx) override {
    for (AgentId to : p_.agents) {
      if (to == self_) continue;
      for (const Variable& v : p_.variables) {
        if (!p_.owners(v.id).contains(self_)) continue;
        for (Value val : v.domain) {
          Payload cpa;
          cpa.assignment[v.id] = val;
          ctx.send(to, MessageKind::CPA, std::move(cpa));
        }
      }
      for (const Constraint& c : p_.constraints) {
        if (c.visibility.is_public || *p_.owners(c.id).begin() != self_) continue;
        for (const auto& [tuple, cost] : c.table) {
          Payload report;
          for (std::size_t k = 0; k < c.scope.size(); ++k) report.assignment[c.scope[k]] = tuple[k];
          report.cost = cost;
          report.constraint = c.id;
          ctx.send(to, MessageKind::CostReport, std::move(report));
        }
      }
    }
    // The smallest-id agent announces the decision after its broadcasts.
    if (self_ != *std::min_element(p_.agents.begin(), p_.agents.end()) || !solution_) return;
    for (AgentId to : p_.agents) {
      if (to == self_) continue;
      Payload sol;
      sol.assignment = solution_->assignment;
      sol.cost = solution_->cost;
      ctx.send(to, MessageKind::Solution, std::move(sol));
    }
  }

  void receive(const Message&, AgentContext&) override {}

 private:
  const Problem& p_;
  AgentId self_;
  std::optional<Solution> solution_;
};

class Mediator final : public AgentProgram {
 public:
  Mediator(const Problem& p, std::optional<Solution> solution)
      : p_(p), solution_(std::move(solution)) {}

  void start(AgentContext& ctx) override {
    if (!solution_) return;
    for (AgentId a : p_.agents) {
      Payload out;
      auto it = p_.outputs.reveal_to.find(a);
      if (it != p_.outputs.reveal_to.end())
        for (VariableId x : it->second) out.assignment[x] = solution_->assignment.at(x);
      ctx.send(a, MessageKind::OutputDelivery, std::move(out));
    }
  }
  void receive(const Message&, AgentContext&) override {}

 private:
  const Problem& p_;
  std::optional<Solution> solution_;
};

class Idle final : public AgentProgram {
 public:
  void receive(const Message&, AgentContext&) override {}
};

}  // namespace

ProtocolRun make_broadcast_all(const Problem& p) {
  auto solution = oracle_solve(p);
  ProtocolRun run;
  for (AgentId a : p.agents) run.programs[a] = std::make_unique<BroadcastAgent>(p, a, solution);
  const AgentId holder = *std::min_element(p.agents.begin(), p.agents.end());
  run.outcome = [solution, holder]() -> TerminalStatus {
    if (!solution) return NoSolution{};
    return Solved{solution->assignment, solution->cost, holder};
  };
  return run;
}

ProtocolRun make_ideal(const Problem& p) {
  auto solution = oracle_solve(p);
  ProtocolRun run;
  run.programs[kMediator] = std::make_unique<Mediator>(p, solution);
  for (AgentId a : p.agents) run.programs[a] = std::make_unique<Idle>();
  run.outcome = [solution]() -> TerminalStatus {
    if (!solution) return NoSolution{};
    return Solved{solution->assignment, solution->cost, kMediator};
  };
  return run;
}

const ProtocolRegistry& default_registry() {
  static const ProtocolRegistry registry = [] {
    ProtocolRegistry r;
    r.add("syncbb", [](const Problem& p, std::uint64_t) { return make_syncbb(p, {false}); });
    r.add("syncbb-steg", [](const Problem& p, std::uint64_t) { return make_syncbb(p, {true}); });
    r.add("broadcast", [](const Problem& p, std::uint64_t) { return make_broadcast_all(p); });
    r.add("ideal", [](const Problem& p, std::uint64_t) { return make_ideal(p); });
    return r;
  }();
  return registry;
}

namespace {

// Unbiased draw in [0, bound) from a fully specified engine so results do not
// depend on the standard library's distribution implementations.
Integer uniform_below(std::mt19937_64& engine, const Integer& bound) {
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  const std::size_t words = (bits + 63) / 64;
  const Integer span = Integer(1) << (words * 64);
  const Integer limit = span - span % bound;
  while (true) {
    Integer x = 0;
    for (std::size_t i = 0; i < words; ++i) x = (x << 64) | Integer(engine());
    if (x < limit) return x % bound;
  }
}

}  // namespace

Transcript hide_existence_filter(Transcript t, const Rational& discard_probability,
                                 std::uint64_t seed) {
  if (discard_probability < 0 || discard_probability > 1)
    throw DomainError("discard probability " + to_string(discard_probability) +
                      " is outside [0,1]");
  if (!t.solved()) return t;
  const Integer num = boost::multiprecision::numerator(discard_probability);
  const Integer den = boost::multiprecision::denominator(discard_probability);
  std::mt19937_64 engine(seed);
  if (uniform_below(engine, den) < num) t.status = NoSolution{};
  return t;
}

Transcript distribute_decision(Transcript t, const OutputMapping& outputs) {
  const Solved* solved = t.solved();
  if (!solved) throw PreconditionError("only a Solved transcript has a decision to distribute");
  const Solved decision = *solved;
  std::uint64_t seq = t.next_seq();
  for (const auto& [agent, vars] : outputs.reveal_to) {
    if (agent == decision.holder) continue;
    Payload out;
    for (VariableId x : vars) {
      auto it = decision.assignment.find(x);
      if (it != decision.assignment.end()) out.assignment[x] = it->second;
    }
    t.messages.push_back(
        Message{seq++, decision.holder, agent, MessageKind::OutputDelivery, std::move(out)});
  }
  return t;
}

namespace {

Cost marginal_cost(const Problem& p, const Message& m, const std::set<SecretId>& already,
                   std::vector<SecretId>& fresh) {
  Cost marginal;
  for (SecretId& s : secrets_revealed(p, m)) {
    if (s.agent != m.sender || already.contains(s)) continue;
    if (std::find(fresh.begin(), fresh.end(), s) != fresh.end()) continue;
    marginal += secret_cost(p.privacy, m.sender, s);
    fresh.push_back(std::move(s));
  }
  return marginal;
}

}  // namespace

bool StegGate::permit(const Message& pending) {
  Ledger& ledger = ledgers_[pending.sender];
  std::vector<SecretId> fresh;
  const Cost marginal = marginal_cost(p_, pending, ledger.revealed, fresh);
  if (ledger.incurred + marginal >= p_.privacy.reward(pending.sender)) return false;
  ledger.incurred += marginal;
  ledger.revealed.insert(fresh.begin(), fresh.end());
  return true;
}

std::optional<RationalityBreach> replay_rationality(const Problem& p, const Transcript& t) {
  std::map<AgentId, std::pair<std::set<SecretId>, Cost>> ledgers;
  for (const Message& m : t.messages) {
    if (m.kind == MessageKind::Abandon || m.kind == MessageKind::OutputDelivery) continue;
    auto& [revealed, incurred] = ledgers[m.sender];
    std::vector<SecretId> fresh;
    const Cost total = incurred + marginal_cost(p, m, revealed, fresh);
    const Cost reward = p.privacy.reward(m.sender);
    if (!(total < reward)) return RationalityBreach{m.seq, m.sender, reward, total};
    incurred = total;
    revealed.insert(fresh.begin(), fresh.end());
  }
  return std::nullopt;
}

}  // namespace dcopkit
