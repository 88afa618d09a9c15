#include "dcopkit/report.hpp"

#include "json_codec.hpp"

namespace dcopkit {

RunReport make_report(const Problem& p, const Transcript& t) {
  RunReport r;
  r.message_count = t.messages.size();
  r.revelations = extract_revelations(t, p);
  for (AgentId a : p.agents) r.privacy_loss[a] = privacy_loss(r.revelations, p.privacy, a);
  if (const Solved* s = t.solved()) {
    r.status = "Solved";
    const Evaluation e = evaluate_assignment(p, s->assignment);
    r.assignment = s->assignment;
    r.cost = e.cost;
    r.within_bounds = acceptable(p, e.cost);
    r.dpcop_total = dpcop_total_cost(p, t);
  } else if (const auto* a = std::get_if<Abandoned>(&t.status)) {
    r.status = "Abandoned";
    r.abandoned_by = a->agent;
  } else {
    r.status = "NoSolution";
  }
  return r;
}

std::string report_to_json(const RunReport& r) {
  using json_codec::Json;
  Json j;
  j["status"] = r.status;
  j["assignment"] = r.assignment ? json_codec::assignment_object(*r.assignment) : Json();
  j["cost"] = r.cost ? json_codec::cost_json(*r.cost) : Json();
  j["within_bounds"] = r.within_bounds ? Json(*r.within_bounds) : Json();
  if (r.abandoned_by) j["abandoned_by"] = r.abandoned_by->value;
  Json loss = Json::object();
  for (const auto& [a, c] : r.privacy_loss) loss[std::to_string(a.value)] = json_codec::cost_json(c);
  j["privacy_loss"] = loss;
  j["dpcop_total"] = r.dpcop_total ? json_codec::cost_json(*r.dpcop_total) : Json();
  j["message_count"] = r.message_count;
  Json rev = Json::array();
  for (const auto& [key, prob] : r.revelations.prob)
    rev.push_back({{"observer", key.first.value}, {"secret", key.second.str()}, {"probability", to_string(prob)}});
  j["revelations"] = rev;
  return j.dump(2) + "\n";
}

}  // namespace dcopkit
