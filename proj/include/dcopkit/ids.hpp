#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace dcopkit {

template <typename Tag>
struct StrongId {
  std::int64_t value = 0;

  constexpr StrongId() = default;
  constexpr explicit StrongId(std::int64_t v) : value(v) {}

  friend constexpr auto operator<=>(StrongId, StrongId) = default;
  friend std::ostream& operator<<(std::ostream& os, StrongId id) { return os << id.value; }
};

using AgentId = StrongId<struct AgentTag>;
using VariableId = StrongId<struct VariableTag>;
using ConstraintId = StrongId<struct ConstraintTag>;

// Reserved sender for trusted-party deliveries; never a problem agent.
inline constexpr AgentId kMediator{0};

// Domain value label.
using Value = std::int64_t;

}  // namespace dcopkit
