#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dcopkit/model.hpp"

namespace dcopkit {

enum class MessageKind { CPA, CostReport, Backtrack, Bound, Solution, Abandon, OutputDelivery };

std::string_view name(MessageKind kind);
MessageKind parse_message_kind(std::string_view text);

// Every kind uses the same fields; unused ones stay empty.
struct Payload {
  Assignment assignment;
  std::optional<Cost> cost;
  std::vector<Cost> cost_vector;
  std::optional<ConstraintId> constraint;

  friend bool operator==(const Payload&, const Payload&) = default;
};

struct Message {
  std::uint64_t seq = 0;
  AgentId sender;
  AgentId receiver;
  MessageKind kind = MessageKind::CPA;
  Payload payload;

  friend bool operator==(const Message&, const Message&) = default;
};

struct Solved {
  Assignment assignment;
  Cost cost;
  AgentId holder;  // agent that announces the decision

  friend bool operator==(const Solved&, const Solved&) = default;
};
struct NoSolution {
  friend bool operator==(const NoSolution&, const NoSolution&) = default;
};
struct Abandoned {
  AgentId agent;

  friend bool operator==(const Abandoned&, const Abandoned&) = default;
};
using TerminalStatus = std::variant<Solved, NoSolution, Abandoned>;

struct Transcript {
  std::vector<Message> messages;
  TerminalStatus status = NoSolution{};

  const Solved* solved() const { return std::get_if<Solved>(&status); }
  std::uint64_t next_seq() const { return messages.empty() ? 0 : messages.back().seq + 1; }

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// Checks strictly increasing seq numbers, sender != receiver, and that
// deliveries and Solution messages only follow a Solved status.
std::vector<std::string> check_well_formed(const Transcript& t);

class AgentContext {
 public:
  virtual ~AgentContext() = default;
  virtual AgentId self() const = 0;
  virtual void send(AgentId to, MessageKind kind, Payload payload) = 0;
  // Sends Abandon to every other agent and ends the run.
  virtual void abandon() = 0;
  virtual bool terminated() const = 0;
};

class AgentProgram {
 public:
  virtual ~AgentProgram() = default;
  virtual void start(AgentContext&) {}
  virtual void receive(const Message& message, AgentContext& ctx) = 0;
};

// Consulted before every send except Abandon; refusing makes the sender
// abandon instead of sending.
class SendGate {
 public:
  virtual ~SendGate() = default;
  virtual bool permit(const Message& pending) = 0;
};

struct ProtocolRun {
  std::map<AgentId, std::unique_ptr<AgentProgram>> programs;
  std::unique_ptr<SendGate> gate;
  // Read at quiescence unless an agent abandoned.
  std::function<TerminalStatus()> outcome;
};

using ProtocolFactory = std::function<ProtocolRun(const Problem&, std::uint64_t seed)>;

class ProtocolRegistry {
 public:
  void add(std::string name, ProtocolFactory factory);
  // Throws ConfigurationError for unknown names.
  const ProtocolFactory& find(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, ProtocolFactory, std::less<>> factories_;
};

struct SimulationLimits {
  std::size_t max_messages = 5'000'000;
};

// Synchronous rounds: every message sent in round r is delivered in round
// r+1; within a round agents run in ascending id order and drain their inbox
// in seq order. `agents` are the recipients of Abandon broadcasts.
Transcript simulate(ProtocolRun run, const std::vector<AgentId>& agents,
                    const SimulationLimits& limits = {});

Transcript run(const Problem& p, std::string_view protocol, std::uint64_t seed,
               const ProtocolRegistry& registry);

// What an agent holds before any message: its variables' domains and the
// tables of constraints it knows.
struct AgentInputs {
  std::map<VariableId, std::vector<Value>> domains;
  std::map<ConstraintId, Constraint> constraints;

  friend bool operator==(const AgentInputs&, const AgentInputs&) = default;
};
using ColluderInputs = std::map<AgentId, AgentInputs>;

ColluderInputs inputs_of(const Problem& p, const std::set<AgentId>& agents);

struct AttackerView {
  std::set<AgentId> colluders;
  std::vector<Message> observed;
  ColluderInputs inputs;
  std::map<AgentId, Assignment> delivered;

  friend bool operator==(const AttackerView&, const AttackerView&) = default;
};

AttackerView view_of(const Transcript& t, const std::set<AgentId>& colluders,
                     ColluderInputs inputs);

}  // namespace dcopkit
