#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcopkit/model.hpp"
#include "dcopkit/netsim.hpp"
#include "dcopkit/privacy.hpp"

namespace dcopkit {

// Figures derived from a problem and a finished transcript. Everything here
// is recomputed from those two inputs, so `solve` and `audit` agree.
struct RunReport {
  std::string status;  // Solved, NoSolution or Abandoned
  std::optional<Assignment> assignment;
  std::optional<Cost> cost;
  std::optional<bool> within_bounds;
  std::optional<AgentId> abandoned_by;
  std::map<AgentId, Cost> privacy_loss;
  std::optional<Cost> dpcop_total;  // Solved only
  std::size_t message_count = 0;
  Revelation revelations;
};

RunReport make_report(const Problem& p, const Transcript& t);
std::string report_to_json(const RunReport& r);

}  // namespace dcopkit
