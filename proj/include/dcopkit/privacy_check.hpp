#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dcopkit/model.hpp"
#include "dcopkit/netsim.hpp"
#include "dcopkit/privacy.hpp"

namespace dcopkit {

// One possible world: a full problem instance (all agents' secret inputs
// instantiated) and its prior probability.
struct PriorInstance {
  Problem problem;
  Rational probability;
};

// Instances share agents; probabilities are positive and sum to exactly 1.
struct Prior {
  std::vector<PriorInstance> support;
};

// Throws PreconditionError when the prior is malformed.
void validate_prior(const Prior& prior);

// What each agent is entitled to learn. nullopt marks "no solution".
using RequestedOutput = std::map<AgentId, std::optional<Assignment>>;
using OutputRequest = std::function<RequestedOutput(const Problem&)>;

// The oracle solution projected onto each agent's reveal_to set.
RequestedOutput oracle_requested_output(const Problem& p);

struct PrivacyCheckConfig {
  std::size_t t = 1;  // largest colluder set
  OutputRequest requested = oracle_requested_output;
  std::uint64_t seed = 0;
  std::size_t max_runs = 200'000;  // protocol executions
};

// A secret random variable: the instance-dependent value of a SecretId.
// Domain membership takes "in"/"out"; an entry takes its cost or "absent".
std::string secret_value(const Problem& p, const SecretId& s);

// Secrets of every agent appearing in any instance of the prior.
std::vector<SecretId> prior_secrets(const Prior& prior);

struct Counterexample {
  AttackerView view;
  SecretId secret;
  std::string value;  // the value whose posterior differs
  Rational posterior_given_view;
  Rational posterior_given_output;
};

struct PrivacyVerdict {
  bool holds = true;
  std::optional<Counterexample> counterexample;
};

// Posterior distributions for one colluder set, grouped by what the
// colluders saw.
struct ViewGroup {
  Rational probability;  // prior mass of the group
  std::vector<std::size_t> instances;
  std::map<SecretId, std::map<std::string, Rational>> posterior;
};

// Runs the protocol on every instance twice (ContractError when the runs
// differ) and groups instances by (view, requested output of the colluders).
std::vector<ViewGroup> view_posteriors(const Prior& prior, const ProtocolFactory& protocol,
                                       const std::set<AgentId>& colluders,
                                       const PrivacyCheckConfig& config = {});

// Requested t-privacy: for every colluder set of size <= t the posterior of
// every secret given the view equals its posterior given the colluders'
// requested outputs and own inputs.
PrivacyVerdict check_requested_privacy(const Prior& prior, const ProtocolFactory& protocol,
                                       const PrivacyCheckConfig& config = {});

// Weaker form: only forbids a view that pins a secret's actual value with
// certainty when the requested output leaves it uncertain.
PrivacyVerdict check_nonuniform_requested_privacy(const Prior& prior,
                                                  const ProtocolFactory& protocol,
                                                  const PrivacyCheckConfig& config = {});

// A prior paired with the name of the protocol to check.
struct Family {
  std::string protocol;
  Prior prior;
};

// "broadcast-family" and "ideal-family": two equally likely instances that
// differ in one domain value agent 1 cannot infer from its output, checked
// against the broadcast-all and ideal protocols. Throws ConfigurationError for
// other names.
Family builtin_family(std::string_view name);
std::vector<std::string> builtin_family_names();

// {"protocol": "broadcast", "instances": [{"probability": "1/2",
// "problem": {...problem file...}}, ...]}. Errors as for parse_problem_file;
// a malformed prior raises ValidationError.
Family parse_family_file(std::string_view text);

std::string counterexample_to_text(const Counterexample& c);

}  // namespace dcopkit
