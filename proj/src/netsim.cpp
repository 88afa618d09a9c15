#include "dcopkit/netsim.hpp"

#include <deque>

#include "dcopkit/errors.hpp"

namespace dcopkit {

std::string_view name(MessageKind kind) {
  switch (kind) {
    case MessageKind::CPA: return "CPA";
    case MessageKind::CostReport: return "CostReport";
    case MessageKind::Backtrack: return "Backtrack";
    case MessageKind::Bound: return "Bound";
    case MessageKind::Solution: return "Solution";
    case MessageKind::Abandon: return "Abandon";
    case MessageKind::OutputDelivery: return "OutputDelivery";
  }
  return "?";
}

MessageKind parse_message_kind(std::string_view text) {
  for (auto kind : {MessageKind::CPA, MessageKind::CostReport, MessageKind::Backtrack,
                    MessageKind::Bound, MessageKind::Solution, MessageKind::Abandon,
                    MessageKind::OutputDelivery})
    if (name(kind) == text) return kind;
  throw CorruptTranscript("unknown message kind '" + std::string(text) + "'");
}

std::vector<std::string> check_well_formed(const Transcript& t) {
  std::vector<std::string> problems;
  const bool solved = t.solved() != nullptr;
  for (std::size_t i = 0; i < t.messages.size(); ++i) {
    const Message& m = t.messages[i];
    if (i > 0 && m.seq <= t.messages[i - 1].seq)
      problems.push_back("seq " + std::to_string(m.seq) + " does not increase");
    if (m.sender == m.receiver)
      problems.push_back("message " + std::to_string(m.seq) + " is sent to its own sender");
    if (!solved && (m.kind == MessageKind::OutputDelivery || m.kind == MessageKind::Solution))
      problems.push_back("message " + std::to_string(m.seq) + " announces a decision without a solved status");
  }
  return problems;
}

void ProtocolRegistry::add(std::string name, ProtocolFactory factory) {
  factories_[std::move(name)] = std::move(factory);
}

const ProtocolFactory& ProtocolRegistry::find(std::string_view name) const {
  auto it = factories_.find(name);
  if (it == factories_.end())
    throw ConfigurationError("unregistered protocol '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> ProtocolRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, factory] : factories_) out.push_back(name);
  return out;
}

namespace {

class Network {
 public:
  Network(ProtocolRun& run, const std::vector<AgentId>& agents, const SimulationLimits& limits)
      : run_(run), agents_(agents), limits_(limits) {}

  class Context final : public AgentContext {
   public:
    Context(Network& net, AgentId self) : net_(net), self_(self) {}
    AgentId self() const override { return self_; }
    void send(AgentId to, MessageKind kind, Payload payload) override {
      net_.send(self_, to, kind, std::move(payload));
    }
    void abandon() override { net_.abandon(self_); }
    bool terminated() const override { return net_.abandoned_.has_value(); }

   private:
    Network& net_;
    AgentId self_;
  };

  Transcript execute() {
    for (auto& [id, program] : run_.programs) {
      if (abandoned_) break;
      Context ctx(*this, id);
      program->start(ctx);
    }
    while (!abandoned_ && !in_flight_.empty()) {
      // Deliver everything sent during the previous round.
      std::map<AgentId, std::deque<Message>> inbox;
      for (Message& m : in_flight_) inbox[m.receiver].push_back(std::move(m));
      in_flight_.clear();
      for (auto& [id, queue] : inbox) {
        auto program = run_.programs.find(id);
        if (program == run_.programs.end())
          throw ContractError("message addressed to agent " + std::to_string(id.value) +
                              " which runs no program");
        Context ctx(*this, id);
        for (const Message& m : queue) {
          if (abandoned_) break;
          program->second->receive(m, ctx);
        }
        if (abandoned_) break;
      }
    }
    Transcript t;
    t.messages = std::move(log_);
    if (abandoned_)
      t.status = Abandoned{*abandoned_};
    else
      t.status = run_.outcome ? run_.outcome() : TerminalStatus{NoSolution{}};
    return t;
  }

 private:
  void push(Message m) {
    if (log_.size() >= limits_.max_messages)
      throw ResourceError("simulation exceeded " + std::to_string(limits_.max_messages) +
                          " messages");
    log_.push_back(m);
    in_flight_.push_back(std::move(m));
  }

  void send(AgentId from, AgentId to, MessageKind kind, Payload payload) {
    if (abandoned_) return;
    if (from == to) throw ContractError("agent " + std::to_string(from.value) + " sent to itself");
    Message m{next_seq_, from, to, kind, std::move(payload)};
    if (run_.gate && kind != MessageKind::Abandon && !run_.gate->permit(m)) {
      abandon(from);
      return;
    }
    ++next_seq_;
    push(std::move(m));
  }

  void abandon(AgentId who) {
    if (abandoned_) return;
    for (AgentId a : agents_) {
      if (a == who) continue;
      push(Message{next_seq_++, who, a, MessageKind::Abandon, {}});
    }
    abandoned_ = who;
  }

  ProtocolRun& run_;
  const std::vector<AgentId>& agents_;
  SimulationLimits limits_;
  std::uint64_t next_seq_ = 0;
  std::vector<Message> log_;
  std::vector<Message> in_flight_;
  std::optional<AgentId> abandoned_;
};

}  // namespace

Transcript simulate(ProtocolRun run, const std::vector<AgentId>& agents,
                    const SimulationLimits& limits) {
  Network net(run, agents, limits);
  return net.execute();
}

Transcript run(const Problem& p, std::string_view protocol, std::uint64_t seed,
               const ProtocolRegistry& registry) {
  const ProtocolFactory& factory = registry.find(protocol);
  return simulate(factory(p, seed), p.agents);
}

ColluderInputs inputs_of(const Problem& p, const std::set<AgentId>& agents) {
  ColluderInputs out;
  for (AgentId a : agents) {
    AgentInputs& in = out[a];
    for (const Variable& v : p.variables)
      if (p.owners(v.id).contains(a)) in.domains[v.id] = v.domain;
    for (const Constraint& c : p.constraints)
      if (p.knows(a, c)) in.constraints.emplace(c.id, c);
  }
  return out;
}

AttackerView view_of(const Transcript& t, const std::set<AgentId>& colluders,
                     ColluderInputs inputs) {
  AttackerView view;
  view.colluders = colluders;
  view.inputs = std::move(inputs);
  for (const Message& m : t.messages) {
    if (!colluders.contains(m.sender) && !colluders.contains(m.receiver)) continue;
    view.observed.push_back(m);
    if (m.kind == MessageKind::OutputDelivery && colluders.contains(m.receiver))
      view.delivered[m.receiver] = m.payload.assignment;
  }
  return view;
}

}  // namespace dcopkit
