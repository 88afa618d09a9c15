#pragma once

// Brute-force reference computations written without the library's
// evaluation or enumeration code.

#include <functional>
#include <optional>

#include "dcopkit/model.hpp"

namespace dcopkit::testing {

// Cost of a full assignment: direct table lookups, aggregated by hand.
inline Cost brute_cost(const Problem& p, const Assignment& a) {
  Rational sum = 0;
  Rational keep = 1;  // probabilistic: product of (1 - p)
  Rational worst = 0;
  bool hard = false;
  for (const Constraint& c : p.constraints) {
    Tuple t;
    for (VariableId x : c.scope) t.push_back(a.at(x));
    const Cost& v = c.table.at(t);
    if (v.is_maximal()) {
      hard = true;
      continue;
    }
    sum += v.value();
    keep *= 1 - v.value();
    worst = std::max(worst, v.value());
  }
  switch (p.system()) {
    case ValueSystem::Weighted:
      return hard ? Cost::maximal() : Cost(sum);
    case ValueSystem::Boolean:
      return hard ? Cost::maximal() : Cost(0);
    case ValueSystem::Fuzzy:
      return hard ? Cost::maximal() : Cost(worst);
    case ValueSystem::Probabilistic:
      return Cost(1 - keep);
  }
  return Cost::maximal();
}

inline void brute_enumerate(const Problem& p, const std::function<void(const Assignment&)>& visit) {
  Assignment a;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == p.variables.size()) {
      visit(a);
      return;
    }
    for (Value v : p.variables[i].domain) {
      a[p.variables[i].id] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

// Minimum utilitarian cost over all full assignments.
inline Cost brute_min(const Problem& p) {
  std::optional<Cost> best;
  brute_enumerate(p, [&](const Assignment& a) {
    Cost c = brute_cost(p, a);
    if (!best || c < *best) best = c;
  });
  return *best;
}

inline bool brute_acceptable(const Problem& p, const Cost& c) {
  const Cost top = p.system() == ValueSystem::Probabilistic ? Cost(1) : Cost::maximal();
  if (c == top) return false;
  if (p.bounds.lower && c < *p.bounds.lower) return false;
  if (p.bounds.upper && *p.bounds.upper < c) return false;
  return true;
}

}  // namespace dcopkit::testing
